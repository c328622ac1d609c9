#include "mouldcalc/scalar.hpp"

#include <cctype>
#include <ostream>

namespace mouldcalc {

Rational make_rational(long num, long den) {
    if (den == 0) throw DivisionByZero("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw SchemaError("empty rational literal");
    std::string t = text;
    if (t.front() == '+') t.erase(t.begin()); // gmp rejects a leading plus
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class num(t);
            return Rational(num);
        }
        mpz_class num(t.substr(0, slash));
        mpz_class den(t.substr(slash + 1));
        if (den == 0) throw DivisionByZero("zero denominator in \"" + text + "\"");
        Rational r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw SchemaError("bad rational literal \"" + text + "\"");
    }
}

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Scalar inverse(const Scalar& s) {
    return Scalar(1) / s;
}

std::string to_string(const Scalar& s) {
    if (s.is_zero()) return "0";
    if (s.im() == 0) return to_string(s.re());
    std::string im_part = to_string(abs(s.im())) + "*i";
    if (s.re() == 0) return (s.im() < 0 ? "-" : "") + im_part;
    return to_string(s.re()) + (s.im() < 0 ? "-" : "+") + im_part;
}

namespace {

// One signed rational out of "a*i+b"-style text, starting at pos.
// Returns the rational (without any trailing "*i") and advances pos.
Rational parse_signed_rational(const std::string& t, std::size_t& pos) {
    std::size_t start = pos;
    if (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) ++pos;
    while (pos < t.size() && (std::isdigit(static_cast<unsigned char>(t[pos])) || t[pos] == '/'))
        ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(t[start]))))
        throw SchemaError("bad scalar literal \"" + t + "\"");
    return parse_rational(t.substr(start, pos - start));
}

} // namespace

Scalar parse_scalar(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw SchemaError("empty scalar literal");

    // Pure "i", "-i", "+i" conveniences.
    if (t == "i") return Scalar::i();
    if (t == "-i") return -Scalar::i();

    std::size_t pos = 0;
    Rational first = parse_signed_rational(t, pos);
    bool first_imag = false;
    if (pos + 1 < t.size() && t[pos] == '*' && t[pos + 1] == 'i') {
        first_imag = true;
        pos += 2;
    } else if (pos < t.size() && t[pos] == 'i') {
        first_imag = true;
        pos += 1;
    }
    if (pos == t.size())
        return first_imag ? Scalar(Rational(0), first) : Scalar(first);

    Rational second = parse_signed_rational(t, pos);
    bool second_imag = false;
    if (pos + 1 < t.size() && t[pos] == '*' && t[pos + 1] == 'i') {
        second_imag = true;
        pos += 2;
    } else if (pos < t.size() && t[pos] == 'i') {
        second_imag = true;
        pos += 1;
    }
    if (pos != t.size() || first_imag == second_imag)
        throw SchemaError("bad scalar literal \"" + text + "\"");
    if (first_imag) return Scalar(second, first);
    return Scalar(first, second);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << to_string(s);
}

} // namespace mouldcalc
