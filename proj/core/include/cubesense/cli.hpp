#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cubesense::cli {

// Runs one subcommand. Exit status 0 on success, 1 when an asserted check
// fails, 2 on usage, contract, or capacity errors. Identical argv and seeds
// produce byte-identical output for any worker count.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Named family instances with arity at most max_arity, in a fixed order; the
// suite used by bounds/entropy sweeps.
std::vector<std::string> named_family_suite(int max_arity);

}  // namespace cubesense::cli
