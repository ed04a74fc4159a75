#include "diracsym/rational_complex.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <sstream>

namespace diracsym {

namespace {

std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << numerator(q) << "/" << denominator(q);
    return os.str();
}

}  // namespace

std::string ExactComplex::str() const {
    std::string s = rational_str(re);
    if (im >= 0) {
        s += "+" + rational_str(im) + "*i";
    } else {
        s += "-" + rational_str(-im) + "*i";
    }
    return s;
}

std::optional<Rational> parse_rational(const std::string& text) {
    using Integer = boost::multiprecision::cpp_int;
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.empty()) return std::nullopt;

    bool negative = false;
    std::size_t pos = 0;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        pos = 1;
    }
    auto all_digits = [](const std::string& t) {
        if (t.empty()) return false;
        for (char c : t)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };

    std::string body = s.substr(pos);
    Rational value;
    if (auto slash = body.find('/'); slash != std::string::npos) {
        std::string num = body.substr(0, slash), den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        Integer d(den);
        if (d == 0) return std::nullopt;
        value = Rational(Integer(num), d);
    } else if (auto dot = body.find('.'); dot != std::string::npos) {
        std::string whole = body.substr(0, dot), frac = body.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (!all_digits(whole) || (!frac.empty() && !all_digits(frac))) return std::nullopt;
        Integer scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        value = Rational(Integer(whole) * scale + (frac.empty() ? Integer(0) : Integer(frac)), scale);
    } else {
        if (!all_digits(body)) return std::nullopt;
        value = Rational(Integer(body));
    }
    if (negative) value = -value;
    return value;
}

}  // namespace diracsym
