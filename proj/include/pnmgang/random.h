// Copyright 2026 The pnmgang Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PNMGANG_RANDOM_H_
#define PNMGANG_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace pnmgang {

using Rng = std::mt19937_64;

// Derives a child seed from a parent seed, a component name and optional
// indices. All randomness in the library flows through this function, so a
// run is a pure function of its master seed.
//
//   seed = splitmix(parent ^ fnv1a(tag)), then folded with each index.
std::uint64_t derive_seed(std::uint64_t parent, std::string_view tag,
                          std::initializer_list<std::uint64_t> indices = {});

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace pnmgang

#endif  // PNMGANG_RANDOM_H_
