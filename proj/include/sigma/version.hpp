//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_VERSION_HPP
#define SIGMA_VERSION_HPP

namespace sigma {

inline constexpr const char* kToolkitVersion = "0.1.0";

}  // namespace sigma

#endif  // SIGMA_VERSION_HPP
