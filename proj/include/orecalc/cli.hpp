#pragma once

#include "orecalc/errors.hpp"
#include "orecalc/multipoly.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace orecalc {

// Invalid command line: unknown command, malformed operator, bad flags.
class UsageError : public Error {
public:
    using Error::Error;
};

enum class Algebra { Shift, Diff, Weyl };
enum class Format { Text, Json };

struct ProblemSpec {
    // One of gb, contract, desing, cdesing, orderbound, indicial, candidates,
    // appsing detect, appsing remove, series.
    std::string command;
    Algebra algebra = Algebra::Shift;
    Domain coeff = Domain::ZZ;
    std::vector<std::string> vars;
    std::vector<std::string> ops;
    // Unset means auto.
    std::optional<std::size_t> bound;
    bool bound_given = false;
    Format format = Format::Text;
    // Witness set for appsing remove, candidate set for appsing detect.
    std::vector<Exponent> exponents;
    unsigned cap = 4;
    // Set instead of the fields above when --help was requested.
    std::string help;
};

// args excludes the program name. in is read when --file - is given.
ProblemSpec parse_problem(const std::vector<std::string> &args, std::istream &in);

struct Report {
    int exit_code = 0;
    std::string out;
    std::string err;
};

Report run_problem(const ProblemSpec &spec);

// parse_problem followed by run_problem; exit 1 on usage errors, 2 on
// precondition failures.
int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err);

} // namespace orecalc
