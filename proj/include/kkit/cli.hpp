/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#ifndef KKIT_CLI_HPP
#define KKIT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace kkit::cli {

enum Exit : int {
	ok = 0,
	unknown = 1,
	usage = 2,
	parse_error = 3,
	certification_failed = 4,
};

/// Runs one sub-command (parse, jac, certify, solve, reduce, check). args
/// excludes the program name. Search settings come from flags, then KKIT_*
/// environment variables, then defaults.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace kkit::cli

#endif
