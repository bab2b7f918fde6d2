#pragma once

#include "orecalc/scalar.hpp"

#include <string>

namespace orecalc::detail {

// Appends the term c*mono to out using " + " / " - " separators. An empty
// mono denotes the constant term.
inline void append_term(std::string &out, const Scalar &c, const std::string &mono) {
    bool first = out.empty();
    bool compound = c.domain() == Domain::QQ_t && c.poly().coeffs().size() > 1 &&
                    [&] {
                        int nz = 0;
                        for (const auto &x : c.poly().coeffs()) nz += (x != 0);
                        return nz > 1;
                    }();
    bool neg = !compound && c.sign() < 0;
    Scalar mag = neg ? -c : c;
    std::string cs = mag.str();
    if (compound) cs = "(" + cs + ")";
    std::string body;
    if (mono.empty())
        body = cs;
    else if (!compound && mag.is_one())
        body = mono;
    else
        body = cs + "*" + mono;
    if (first)
        out += (neg ? "-" : "") + body;
    else
        out += (neg ? " - " : " + ") + body;
}

inline std::string power(const std::string &name, unsigned e) {
    if (e == 1) return name;
    return name + "^" + std::to_string(e);
}

} // namespace orecalc::detail
