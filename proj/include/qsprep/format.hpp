// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

namespace qsprep {

// 17 significant digits, independent of the C locale.
std::string format_double(double value);
// Strict parse of a full token; throws ValidationError.
double parse_double(std::string_view token);

}  // namespace qsprep
