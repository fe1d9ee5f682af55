// Copyright 2026 The oamsq Authors
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

#ifndef OAMSQ_IO_H
#define OAMSQ_IO_H

#include <filesystem>
#include <string>
#include <string_view>

namespace oamsq {

/// Number formatting shared by every CSV writer: 12 significant digits,
/// '.' decimal separator, locale independent.
std::string format_number(double value);

/// Writes `contents` verbatim (binary mode, so LF stays LF).
void write_file(const std::filesystem::path &path, std::string_view contents);

}  // namespace oamsq

#endif
