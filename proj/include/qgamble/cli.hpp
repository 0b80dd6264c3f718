// cli.hpp: the qgamble command line, callable in-process.
//
// Exit codes: 0 ok / coherent / feasible, 1 tool failure, 2 incoherent / infeasible /
// non-representable, 3 inconclusive.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qgamble {

/// `args` excludes the program name. A file argument of "-" reads from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace qgamble
