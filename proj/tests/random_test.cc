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

#include "pnmgang/random.h"

#include <set>

#include "doctest.h"

namespace pnmgang {
namespace {

TEST_CASE("derive_seed is a pure function of its inputs") {
  CHECK(derive_seed(7, "a") == derive_seed(7, "a"));
  CHECK(derive_seed(7, "a", {1, 2}) == derive_seed(7, "a", {1, 2}));
}

TEST_CASE("derive_seed separates parents, tags and indices") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t parent : {0, 1, 2}) {
    for (const char* tag : {"real", "fake", "latent"}) {
      for (std::uint64_t i = 0; i < 20; ++i) seen.insert(derive_seed(parent, tag, {i}));
      seen.insert(derive_seed(parent, tag));
    }
  }
  CHECK(seen.size() == 3 * 3 * 21);
  CHECK(derive_seed(1, "x", {1, 2}) != derive_seed(1, "x", {2, 1}));
}

TEST_CASE("make_rng streams repeat") {
  Rng a = make_rng(42);
  Rng b = make_rng(42);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
}

}  // namespace
}  // namespace pnmgang
