//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/chem/smi_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sigma::chem {

std::vector<SmiRecord> read_smi(std::istream& in) {
  std::vector<SmiRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    SmiRecord rec;
    rec.line_no = line_no;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      rec.smiles = line;
    } else {
      rec.smiles = line.substr(0, tab);
      rec.id = line.substr(tab + 1);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<SmiRecord> read_smi_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return read_smi(in);
}

void write_smi(std::ostream& out, const std::vector<SmiRecord>& records) {
  for (const SmiRecord& rec : records) {
    out << rec.smiles;
    if (!rec.id.empty()) out << '\t' << rec.id;
    out << '\n';
  }
}

void write_smi_file(const std::string& path, const std::vector<SmiRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  write_smi(out, records);
}

}  // namespace sigma::chem
