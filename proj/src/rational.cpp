#include "fairdiv/rational.hpp"

#include "fairdiv/errors.hpp"

#include <cctype>

namespace fairdiv {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

BigInt parse_unsigned(std::string_view s, std::string_view whole) {
    if (!all_digits(s)) {
        throw SchemaError("not a rational number: '" + std::string(whole) + "'");
    }
    return BigInt(std::string(s));
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw SchemaError("empty rational literal");

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_unsigned(s.substr(0, slash), text);
        BigInt den = parse_unsigned(s.substr(slash + 1), text);
        if (den == 0) throw SchemaError("zero denominator in '" + std::string(text) + "'");
        value = Rational(num, den);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if (whole.empty() && frac.empty()) {
            throw SchemaError("not a rational number: '" + std::string(text) + "'");
        }
        BigInt num = whole.empty() ? BigInt(0) : parse_unsigned(whole, text);
        BigInt scale = 1;
        if (!frac.empty()) {
            BigInt frac_num = parse_unsigned(frac, text);
            for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
            num = num * scale + frac_num;
        }
        value = Rational(num, scale);
    } else {
        value = Rational(parse_unsigned(s, text));
    }
    return negative ? -value : value;
}

std::string format_rational(const Rational& value) {
    std::string num = numerator(value).str();
    if (denominator(value) == 1) return num;
    return num + "/" + denominator(value).str();
}

} // namespace fairdiv
