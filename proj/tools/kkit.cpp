// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "kkit/cli.hpp"

int main(int argc, char** argv)
{
	return kkit::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
