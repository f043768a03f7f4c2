//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_CHEM_SMI_IO_HPP
#define SIGMA_CHEM_SMI_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace sigma::chem {

// One record of a .smi file: "SMILES[\tID]" per line, '#' starts a comment.
struct SmiRecord {
  std::string smiles;
  std::string id;
  int line_no = 0;
};

std::vector<SmiRecord> read_smi(std::istream& in);
std::vector<SmiRecord> read_smi_file(const std::string& path);

void write_smi(std::ostream& out, const std::vector<SmiRecord>& records);
void write_smi_file(const std::string& path, const std::vector<SmiRecord>& records);

}  // namespace sigma::chem

#endif  // SIGMA_CHEM_SMI_IO_HPP
