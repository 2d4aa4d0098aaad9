// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#include "qsprep/cli.hpp"

int main(int argc, char** argv) { return qsprep::cli::run(argc, argv); }
