#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fle {

// Entry point behind the `fle` binary. Subcommands: classify, translate,
// models (enumerate | check), deduce. Reports are JSON objects on stdout
// with keys in sorted order; diagnostics go to stderr. Exit codes: 0 ok,
// 1 usage/parse error, 2 verification counterexample or rejected derivation,
// 3 resource budget or ceiling exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace fle
