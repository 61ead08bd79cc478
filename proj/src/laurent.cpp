#include "lenskein/laurent.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace lenskein {

LaurentPoly2 LaurentPoly2::constant(BigInt c) {
    LaurentPoly2 f;
    f.add_term(0, 0, c);
    return f;
}

LaurentPoly2 LaurentPoly2::monomial(int deg_a, int deg_z, BigInt coeff) {
    LaurentPoly2 f;
    f.add_term(deg_a, deg_z, coeff);
    return f;
}

void LaurentPoly2::add_term(int deg_a, int deg_z, const BigInt& coeff) {
    if (coeff == 0) return;
    Exp e{deg_a, deg_z};
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly2 LaurentPoly2::operator-() const {
    LaurentPoly2 g;
    for (const auto& [e, c] : terms_) g.terms_.emplace(e, -c);
    return g;
}

LaurentPoly2& LaurentPoly2::operator+=(const LaurentPoly2& g) {
    for (const auto& [e, c] : g.terms_) add_term(e.first, e.second, c);
    return *this;
}

LaurentPoly2& LaurentPoly2::operator-=(const LaurentPoly2& g) {
    for (const auto& [e, c] : g.terms_) add_term(e.first, e.second, -c);
    return *this;
}

LaurentPoly2 operator*(const LaurentPoly2& f, const LaurentPoly2& g) {
    LaurentPoly2 h;
    for (const auto& [ef, cf] : f.terms())
        for (const auto& [eg, cg] : g.terms())
            h.add_term(ef.first + eg.first, ef.second + eg.second, cf * cg);
    return h;
}

LaurentPoly2 LaurentPoly2::mono_mul(int da, int dz, BigInt coeff) const {
    LaurentPoly2 g;
    if (coeff == 0) return g;
    for (const auto& [e, c] : terms_) g.terms_.emplace(Exp{e.first + da, e.second + dz}, c * coeff);
    return g;
}

int LaurentPoly2::a_min_degree() const {
    if (terms_.empty()) throw std::domain_error("a_min_degree: zero polynomial");
    int m = terms_.begin()->first.first;
    for (const auto& [e, c] : terms_)
        if (e.first < m) m = e.first;
    return m;
}

namespace {

void render_power(std::ostringstream& out, const char* var, int k) {
    if (k == 0) return;
    out << ' ' << var;
    if (k != 1) out << '^' << k;
}

}  // namespace

std::string render(const LaurentPoly2& f) {
    if (f.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) out << '-';
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        std::ostringstream body;
        if (mag != 1 || (e.first == 0 && e.second == 0)) body << mag.str();
        render_power(body, "a", e.first);
        render_power(body, "z", e.second);
        std::string s = body.str();
        if (!s.empty() && s[0] == ' ') s.erase(0, 1);
        out << s;
    }
    return out.str();
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
};

int parse_int(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.i;
    if (c.i < c.s.size() && (c.s[c.i] == '-' || c.s[c.i] == '+')) ++c.i;
    std::size_t digits = c.i;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
    if (c.i == digits) throw std::invalid_argument("polynomial parse: expected integer");
    return std::stoi(c.s.substr(start, c.i - start));
}

BigInt parse_bigint_digits(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.i;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
    if (c.i == start) throw std::invalid_argument("polynomial parse: expected digits");
    return BigInt(c.s.substr(start, c.i - start));
}

}  // namespace

LaurentPoly2 parse_poly(const std::string& text) {
    Cursor c{text};
    if (c.done()) throw std::invalid_argument("polynomial parse: empty input");
    LaurentPoly2 f;
    bool first = true;
    while (!c.done()) {
        int sign = 1;
        char ch = c.peek();
        if (ch == '+' || ch == '-') {
            sign = ch == '-' ? -1 : 1;
            ++c.i;
        } else if (!first) {
            throw std::invalid_argument("polynomial parse: missing +/- separator");
        }
        first = false;
        c.skip_ws();
        BigInt coeff = 1;
        bool have_body = false;
        if (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
            coeff = parse_bigint_digits(c);
            have_body = true;
        }
        int da = 0, dz = 0;
        for (;;) {
            char v = c.peek();
            if (v == 'a' || v == 'z') {
                ++c.i;
                int k = 1;
                if (c.peek() == '^') {
                    ++c.i;
                    k = parse_int(c);
                }
                (v == 'a' ? da : dz) += k;
                have_body = true;
            } else {
                break;
            }
        }
        if (!have_body) throw std::invalid_argument("polynomial parse: empty term");
        f.add_term(da, dz, sign > 0 ? coeff : BigInt(-coeff));
    }
    return f;
}

}  // namespace lenskein
