#include "specnorm/angle.hpp"

#include <algorithm>
#include <cctype>

namespace specnorm {

namespace {

std::string strip(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

bool is_decimal(const std::string& s) {
    if (s.empty()) return false;
    size_t i = 0;
    if (s[i] == '+' || s[i] == '-') i++;
    bool digits = false, dot = false;
    for (; i < s.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits = true;
        } else if (s[i] == '.' && !dot) {
            dot = true;
        } else {
            return false;
        }
    }
    return digits;
}

}  // namespace

mpq_class Angle::decimal_to_mpq(const std::string& text) {
    if (!is_decimal(text)) throw DomainError("not a decimal number: '" + text + "'");
    bool neg = false;
    size_t i = 0;
    if (text[i] == '+' || text[i] == '-') {
        neg = text[i] == '-';
        i++;
    }
    std::string digits;
    long frac = 0;
    bool seen_dot = false;
    for (; i < text.size(); ++i) {
        if (text[i] == '.') {
            seen_dot = true;
        } else {
            digits.push_back(text[i]);
            if (seen_dot) frac++;
        }
    }
    if (digits.empty()) digits = "0";
    mpz_class num(digits, 10);
    mpz_class den = 1;
    for (long k = 0; k < frac; ++k) den *= 10;
    mpq_class q(num, den);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
}

Angle Angle::parse(const std::string& raw) {
    std::string s = strip(raw);
    if (s.empty()) throw DomainError("empty angle");
    std::string lower = s;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });

    auto pipos = lower.find("pi");
    if (pipos == std::string::npos) return Angle::radians(decimal_to_mpq(s));

    std::string before = s.substr(0, pipos);
    std::string after = s.substr(pipos + 2);

    // "pi/16", "-pi/16"
    if (!after.empty()) {
        if (after[0] != '/') throw DomainError("malformed angle: '" + raw + "'");
        std::string den = after.substr(1);
        mpq_class d = decimal_to_mpq(den);
        if (d == 0) throw DomainError("angle denominator is zero: '" + raw + "'");
        mpq_class num(1);
        if (before == "-") {
            num = -1;
        } else if (!before.empty() && before != "+") {
            throw DomainError("malformed angle: '" + raw + "'");
        }
        mpq_class q = num / d;
        q.canonicalize();
        return Angle::pi_multiple(q);
    }

    // "0.1pi", "pi", "-pi"
    if (before.empty() || before == "+") return Angle::pi_multiple(1);
    if (before == "-") return Angle::pi_multiple(-1);
    if (before.back() == '*') before.pop_back();
    return Angle::pi_multiple(decimal_to_mpq(before));
}

std::string Angle::describe() const {
    mpq_class c = coef_;
    std::string base = c.get_str();
    return times_pi_ ? base + "*pi" : base + " rad";
}

bool abs_strictly_less(const Angle& theta, const Angle& bound) {
    mpq_class ta = ::abs(theta.coefficient());
    mpq_class ba = ::abs(bound.coefficient());
    if (ta == 0) return ba != 0;
    if (ba == 0) return false;
    if (theta.is_pi_multiple() == bound.is_pi_multiple()) return ta < ba;
    // Mixed kinds: never exactly equal, so a numeric comparison at escalating
    // precision terminates.
    for (long prec = 128; prec <= 1L << 16; prec *= 2) {
        HPReal tv = theta.abs().value(prec);
        HPReal bv = bound.abs().value(prec);
        if (tv < bv) return true;
        if (tv > bv) return false;
    }
    return false;  // indistinguishable from the boundary: treat as outside
}

}  // namespace specnorm
