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

#ifndef PNMGANG_CSV_H_
#define PNMGANG_CSV_H_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pnmgang {

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

// Throws std::invalid_argument on anything but a complete decimal float.
double parse_double(std::string_view text);

std::vector<std::string> split_csv_line(std::string_view line);

void write_csv_row(std::ostream& out, std::span<const double> values);

}  // namespace pnmgang

#endif  // PNMGANG_CSV_H_
