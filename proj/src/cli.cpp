#include "orecalc/cli.hpp"

#include "orecalc/contraction.hpp"
#include "orecalc/dfinite.hpp"
#include "orecalc/groebner.hpp"
#include "orecalc/parse.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <tuple>

namespace orecalc {

namespace {

using json = nlohmann::ordered_json;

const std::set<std::string> CONTRACTION{"contract", "desing", "cdesing"};
const std::set<std::string> DFINITE{"indicial", "candidates", "appsing detect", "appsing remove", "series"};

bool all_digits(const std::string &s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool is_identifier(const std::string &s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

Exponent parse_exponent(const std::string &text, std::size_t n) {
    std::string s;
    for (char c : text)
        if (c != '(' && c != ')' && c != ' ') s += c;
    Exponent e;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) {
        if (!all_digits(part) || part.size() > 9)
            throw UsageError("malformed exponent '" + text + "'");
        e.push_back(static_cast<std::uint32_t>(std::stoul(part)));
    }
    if (e.size() != n)
        throw UsageError("exponent '" + text + "' needs " + std::to_string(n) + " entries");
    return e;
}

std::vector<std::string> read_ops(std::istream &in) {
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        auto e = line.find_last_not_of(" \t\r");
        out.push_back(line.substr(b, e - b + 1));
    }
    return out;
}

SigPtr make_signature(const ProblemSpec &spec) {
    if (spec.algebra == Algebra::Shift) return OreSignature::shift(spec.coeff, spec.vars);
    return OreSignature::differential(spec.coeff, spec.vars);
}

std::vector<OreOperator> parse_ops(const ProblemSpec &spec, const SigPtr &sig) {
    std::vector<OreOperator> out;
    for (const auto &s : spec.ops) {
        try {
            out.push_back(parse_operator(s, sig));
        } catch (const ParseError &e) {
            throw UsageError("operator '" + s + "': " + e.what());
        }
    }
    return out;
}

void validate(ProblemSpec &spec) {
    const std::string &c = spec.command;
    if (spec.vars.empty()) throw UsageError("at least one --var is required");
    std::set<std::string> seen;
    for (const auto &v : spec.vars) {
        if (!is_identifier(v)) throw UsageError("variable name '" + v + "' is not an identifier");
        if (v[0] == 'D') throw UsageError("variable name '" + v + "' clashes with the D-prefixed operator symbols");
        if (v == "t") throw UsageError("variable name 't' is reserved for the parameter of QQ_t");
        if (!seen.insert(v).second) throw UsageError("duplicate variable '" + v + "'");
    }
    if (spec.ops.empty()) throw UsageError("no operator given; use --op or --file");

    bool contraction = CONTRACTION.count(c) > 0;
    if (contraction || c == "orderbound") {
        if (spec.algebra == Algebra::Weyl) throw UsageError(c + " needs --algebra shift or diff");
        if (spec.vars.size() != 1) throw UsageError(c + " needs exactly one --var");
        if (spec.ops.size() != 1) throw UsageError(c + " needs exactly one operator");
    }
    if (c == "orderbound" && spec.algebra != Algebra::Shift) throw UsageError("orderbound needs --algebra shift");
    if (spec.bound_given && !contraction) throw UsageError("--bound only applies to contract, desing and cdesing");
    if (contraction && !spec.bound && spec.algebra != Algebra::Shift)
        throw UsageError("--bound auto is only available for shift operators");
    if (DFINITE.count(c) && spec.algebra == Algebra::Shift) throw UsageError(c + " needs a differential algebra");
    if (!spec.exponents.empty() && c != "appsing detect" && c != "appsing remove")
        throw UsageError("--exp only applies to appsing");
    if (c == "appsing remove" && spec.exponents.empty()) throw UsageError("appsing remove needs --exp");

    parse_ops(spec, make_signature(spec));
}

std::string exponent_str(const Exponent &e) {
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    return s + ")";
}

json exponent_json(const Exponent &e) { return json(std::vector<std::uint32_t>(e.begin(), e.end())); }

json exponents_json(const std::vector<Exponent> &es) {
    json a = json::array();
    for (const auto &e : es) a.push_back(exponent_json(e));
    return a;
}

using Keyed = std::tuple<int, int, std::string>;

Keyed sort_key(const OreOperator &P) { return {P.total_order(), P.x_degree(), P.str()}; }

// Operators sorted by (order, degree, printed form) with the permutation
// applied to the parallel list.
std::vector<std::string> sorted_strs(const std::vector<OreOperator> &ops, std::vector<std::string> *parallel = nullptr) {
    std::vector<std::size_t> idx(ops.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<Keyed> keys;
    for (const auto &p : ops) keys.push_back(sort_key(p));
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    std::vector<std::string> out, par;
    for (auto i : idx) {
        out.push_back(std::get<2>(keys[i]));
        if (parallel) par.push_back((*parallel)[i]);
    }
    if (parallel) *parallel = std::move(par);
    return out;
}

std::vector<std::string> y_names(std::size_t n) {
    std::vector<std::string> r;
    for (std::size_t i = 1; i <= n; ++i) r.push_back("y" + std::to_string(i));
    return r;
}

std::vector<std::string> head_coefficient_strs(const WeylGB &G) {
    std::vector<std::string> r;
    for (const auto &h : G.head_coefficients()) r.push_back(h.str(G.sig->x_names()));
    return r;
}

void text_list(std::ostream &o, const std::string &title, const std::vector<std::string> &items) {
    o << title << ":\n";
    for (const auto &s : items) o << "  " << s << "\n";
}

std::size_t resolve_bound(const ProblemSpec &spec, const OreOperator &L) {
    return spec.bound ? *spec.bound : order_bound_shift(L);
}

// Fills j and writes the text form to t.
void dispatch(const ProblemSpec &spec, json &j, std::ostream &t, std::ostream &err) {
    SigPtr sig = make_signature(spec);
    std::vector<OreOperator> ops = parse_ops(spec, sig);
    const std::string &c = spec.command;

    if (c == "gb") {
        TermOrder ord = TermOrder::ore_default(sig->n());
        auto basis = sorted_strs(buchberger(ops, ord).elements);
        j["basis"] = basis;
        for (const auto &s : basis) t << s << "\n";
    } else if (c == "contract") {
        std::size_t k = resolve_bound(spec, ops[0]);
        ContractionResult r = contraction_basis(ops[0], k);
        auto basis = sorted_strs(r.basis);
        j["bound"] = k;
        j["basis"] = basis;
        j["desingularized"] = r.desing.str();
        j["saturation_constant"] = r.sat_constant.str();
        t << "bound: " << k << "\n";
        t << "desingularized: " << r.desing.str() << "\n";
        t << "saturation constant: " << r.sat_constant.str() << "\n";
        text_list(t, "basis", basis);
    } else if (c == "desing") {
        std::size_t k = resolve_bound(spec, ops[0]);
        OreOperator T = desingularized_operator(ops[0], k);
        j["bound"] = k;
        j["operator"] = T.str();
        t << T.str() << "\n";
    } else if (c == "cdesing") {
        std::size_t k = resolve_bound(spec, ops[0]);
        std::vector<std::string> notes;
        OreOperator T = completely_desingularized(ops[0], k, &notes);
        j["bound"] = k;
        j["operator"] = T.str();
        j["notes"] = notes;
        t << T.str() << "\n";
        if (spec.format == Format::Text)
            for (const auto &n : notes) err << "note: " << n << "\n";
    } else if (c == "orderbound") {
        std::size_t k = order_bound_shift(ops[0]);
        j["bound"] = k;
        t << k << "\n";
    } else if (c == "indicial") {
        std::vector<std::string> polys;
        for (const auto &P : ops) polys.push_back(indicial_polynomial(P).str(y_names(sig->n())));
        j["indicial"] = polys;
        for (const auto &s : polys) t << s << "\n";
    } else if (c == "candidates") {
        WeylGB G = weyl_gb(ops);
        ExponentCandidateSet S = exponent_candidates(G);
        std::vector<std::string> gens;
        for (const auto &g : S.generators) gens.push_back(g.str(y_names(sig->n())));
        j["rank"] = rank(G);
        j["indicial"] = gens;
        j["candidates"] = exponents_json(S.candidates);
        for (const auto &e : S.candidates) t << exponent_str(e) << "\n";
    } else if (c == "appsing detect") {
        WeylGB G = weyl_gb(ops);
        ApparentVerdict v = spec.exponents.empty() ? detect_apparent(G) : detect_apparent(G, spec.exponents);
        std::string verdict = v.apparent ? "apparent" : "not-apparent";
        j["verdict"] = verdict;
        j["rank"] = rank(G);
        j["candidates"] = exponents_json(v.candidates);
        t << verdict << "\n";
        std::string cs;
        for (const auto &e : v.candidates) cs += " " + exponent_str(e);
        t << "candidates:" << cs << "\n";
        if (v.tried) {
            auto hcs = head_coefficient_strs(v.M);
            auto basis = sorted_strs(v.M.elements, &hcs);
            j[v.apparent ? "witness" : "last_subset"] = exponents_json(v.B);
            j["basis"] = basis;
            j["head_coefficients"] = hcs;
            std::string bs;
            for (const auto &e : v.B) bs += " " + exponent_str(e);
            t << (v.apparent ? "witness:" : "last subset:") << bs << "\n";
            text_list(t, "basis", basis);
            text_list(t, "head coefficients", hcs);
        }
    } else if (c == "appsing remove") {
        WeylGB G = weyl_gb(ops);
        WeylGB M = remove_apparent(G, spec.exponents);
        auto hcs = head_coefficient_strs(M);
        auto basis = sorted_strs(M.elements, &hcs);
        bool ordinary = origin_is_ordinary(M);
        j["rank"] = rank(M);
        j["origin_ordinary"] = ordinary;
        j["basis"] = basis;
        j["head_coefficients"] = hcs;
        t << "rank: " << rank(M) << "\n";
        t << "origin ordinary: " << (ordinary ? "yes" : "no") << "\n";
        text_list(t, "basis", basis);
        text_list(t, "head coefficients", hcs);
    } else if (c == "series") {
        WeylGB G = weyl_gb(ops);
        std::vector<Exponent> pe = G.parametric_exponents();
        std::vector<TruncatedSeries> S = series_solutions(G, spec.cap);
        j["cap"] = spec.cap;
        json arr = json::array();
        for (std::size_t k = 0; k < S.size(); ++k) {
            MultiPoly f(Domain::QQ, sig->n());
            for (const auto &[e, v] : S[k].coeffs) f += MultiPoly::monomial(Scalar(Domain::QQ, v), e);
            std::string s = f.str(sig->x_names());
            arr.push_back(json{{"parametric", exponent_json(pe[k])}, {"truncation", s}});
            t << exponent_str(pe[k]) << ": " << s << "\n";
        }
        j["series"] = arr;
    }
}

} // namespace

ProblemSpec parse_problem(const std::vector<std::string> &args, std::istream &in) {
    ProblemSpec spec;
    CLI::App app{"Ore algebra computations", "orecalc"};
    app.require_subcommand(1);

    std::string algebra, coeff = "ZZ", bound, format = "text", file;
    std::vector<std::string> exps;
    auto common = [&](CLI::App *s) {
        s->add_option("--algebra", algebra, "shift, diff or weyl")
            ->required()
            ->check(CLI::IsMember({"shift", "diff", "weyl"}));
        s->add_option("--coeff", coeff, "ZZ, QQ or QQ_t")->check(CLI::IsMember({"ZZ", "QQ", "QQ_t"}));
        s->add_option("--var", spec.vars, "variable name, repeatable")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
        s->add_option("--op", spec.ops, "operator, repeatable")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
        s->add_option("--file", file, "file with one operator per line, - for stdin");
        s->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    };
    auto with_bound = [&](CLI::App *s) { s->add_option("--bound", bound, "auto or a nonnegative integer"); };
    auto with_exp = [&](CLI::App *s) {
        s->add_option("--exp", exps, "exponent such as 0,1, repeatable")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    };

    std::vector<std::pair<std::string, CLI::App *>> commands;
    auto add = [&](const std::string &name, const std::string &help, CLI::App *parent) {
        CLI::App *s = parent->add_subcommand(name, help);
        common(s);
        return s;
    };
    for (const auto &[name, help] : std::vector<std::pair<std::string, std::string>>{
             {"gb", "Groebner basis of the left ideal"},
             {"contract", "contraction ideal basis"},
             {"desing", "desingularized operator"},
             {"cdesing", "completely desingularized operator"},
             {"orderbound", "order bound for shift contraction"},
             {"indicial", "indicial polynomials of the operators"},
             {"candidates", "exponent candidates of the system"},
             {"series", "truncated power series solutions at the origin"}}) {
        CLI::App *s = add(name, help, &app);
        commands.emplace_back(name, s);
        // Every command accepts the flags so that misuse is reported with a
        // specific diagnostic rather than as an unknown option.
        with_bound(s);
        with_exp(s);
        if (name == "series") s->add_option("--cap", spec.cap, "truncation degree");
    }
    CLI::App *appsing = app.add_subcommand("appsing", "apparent singularities at the origin");
    appsing->require_subcommand(1);
    for (const auto &[name, help] : std::vector<std::pair<std::string, std::string>>{
             {"detect", "decide whether the origin is apparent"}, {"remove", "remove it with a given exponent set"}}) {
        CLI::App *s = add(name, help, appsing);
        commands.emplace_back("appsing " + name, s);
        with_bound(s);
        with_exp(s);
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp &) {
        spec.help = app.help();
        return spec;
    } catch (const CLI::ParseError &e) {
        throw UsageError(e.what());
    }

    for (const auto &[name, s] : commands)
        if (s->parsed()) spec.command = name;
    spec.algebra = algebra == "shift" ? Algebra::Shift : algebra == "diff" ? Algebra::Diff : Algebra::Weyl;
    spec.coeff = coeff == "ZZ" ? Domain::ZZ : coeff == "QQ" ? Domain::QQ : Domain::QQ_t;
    spec.format = format == "json" ? Format::Json : Format::Text;
    if (!file.empty()) {
        std::vector<std::string> more;
        if (file == "-") {
            more = read_ops(in);
        } else {
            std::ifstream f(file);
            if (!f) throw UsageError("cannot open '" + file + "'");
            more = read_ops(f);
        }
        spec.ops.insert(spec.ops.end(), more.begin(), more.end());
    }
    if (!bound.empty()) {
        spec.bound_given = true;
        if (bound == "auto") {
            if (spec.algebra != Algebra::Shift || !CONTRACTION.count(spec.command))
                throw UsageError("--bound auto is only available for shift contraction commands");
        } else if (all_digits(bound) && bound.size() < 10) {
            spec.bound = std::stoul(bound);
        } else {
            throw UsageError("--bound expects auto or a nonnegative integer, got '" + bound + "'");
        }
    }
    for (const auto &e : exps) spec.exponents.push_back(parse_exponent(e, spec.vars.size()));
    validate(spec);
    return spec;
}

Report run_problem(const ProblemSpec &spec) {
    Report r;
    json j;
    j["schema"] = 1;
    std::ostringstream text, err;
    try {
        dispatch(spec, j, text, err);
    } catch (const UsageError &e) {
        r.exit_code = 1;
        r.err = std::string("error: ") + e.what() + "\n";
        return r;
    } catch (const Error &e) {
        r.exit_code = 2;
        r.err = std::string("error: ") + e.what() + "\n";
        return r;
    }
    r.out = spec.format == Format::Json ? j.dump() + "\n" : text.str();
    r.err = err.str();
    return r;
}

int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err) {
    ProblemSpec spec;
    try {
        spec = parse_problem(args, in);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    if (!spec.help.empty()) {
        out << spec.help;
        return 0;
    }
    Report r = run_problem(spec);
    out << r.out;
    err << r.err;
    return r.exit_code;
}

} // namespace orecalc
