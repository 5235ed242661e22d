// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header: conditional strengthenings of Han's inequality and
// partition subadditivity for submodular functions, the corresponding
// strengthened Szász / Fischer / Ky Fan determinantal bounds, equality
// diagnostics, and brute-force verification suites.

#ifndef SUBDET_SUBDET_HPP_
#define SUBDET_SUBDET_HPP_

#include "subdet/combinatorics.hpp"
#include "subdet/detineq.hpp"
#include "subdet/errors.hpp"
#include "subdet/io.hpp"
#include "subdet/linalg.hpp"
#include "subdet/sets.hpp"
#include "subdet/submodular.hpp"
#include "subdet/verdict.hpp"
#include "subdet/verify.hpp"

#endif  // SUBDET_SUBDET_HPP_
