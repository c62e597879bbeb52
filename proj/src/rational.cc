#include "reconcile/rational.h"

#include <cctype>
#include <stdexcept>

namespace reconcile {

namespace {

std::int64_t parse_digits(std::string_view digits, std::string_view whole) {
    if (digits.empty())
        throw std::invalid_argument("malformed number: " + std::string(whole));
    std::int64_t value = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("malformed number: " + std::string(whole));
        if (value > (INT64_MAX - 9) / 10)
            throw std::invalid_argument("number out of range: " + std::string(whole));
        value = value * 10 + (c - '0');
    }
    return value;
}

}  // namespace

Rational parse_rational(std::string_view text, bool allow_negative) {
    std::string_view whole = text;
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    Rational value;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::int64_t num = parse_digits(text.substr(0, slash), whole);
        std::int64_t den = parse_digits(text.substr(slash + 1), whole);
        if (den == 0)
            throw std::invalid_argument("zero denominator: " + std::string(whole));
        value = Rational(num, den);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        if (frac_part.size() > 17)
            throw std::invalid_argument("too many decimals: " + std::string(whole));
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i)
            scale *= 10;
        std::int64_t ip = int_part.empty() ? 0 : parse_digits(int_part, whole);
        std::int64_t fp = frac_part.empty() ? 0 : parse_digits(frac_part, whole);
        if (int_part.empty() && frac_part.empty())
            throw std::invalid_argument("malformed number: " + std::string(whole));
        value = Rational(ip) + Rational(fp, scale);
    } else {
        value = Rational(parse_digits(text, whole));
    }
    if (negative)
        value = -value;
    if (!allow_negative && value < 0)
        throw std::invalid_argument("negative value: " + std::string(whole));
    return value;
}

std::string format_rational(const Rational &value) {
    std::int64_t num = value.numerator();
    std::int64_t den = value.denominator();
    if (den == 1)
        return std::to_string(num);

    std::int64_t rest = den;
    int twos = 0, fives = 0;
    while (rest % 2 == 0) { rest /= 2; ++twos; }
    while (rest % 5 == 0) { rest /= 5; ++fives; }
    int digits = std::max(twos, fives);
    if (rest != 1 || digits > 17)
        return std::to_string(num) + "/" + std::to_string(den);

    // den divides 10^digits, so the decimal expansion terminates.
    std::int64_t scale = 1;
    for (int i = 0; i < digits; ++i)
        scale *= 10;
    std::string sign = num < 0 ? "-" : "";
    std::uint64_t mag = num < 0 ? static_cast<std::uint64_t>(-(num + 1)) + 1
                                : static_cast<std::uint64_t>(num);
    std::uint64_t int_part = mag / static_cast<std::uint64_t>(den);
    std::uint64_t frac_num = mag % static_cast<std::uint64_t>(den);
    unsigned __int128 frac = static_cast<unsigned __int128>(frac_num) *
                             static_cast<std::uint64_t>(scale / den);
    std::string frac_text = std::to_string(static_cast<std::uint64_t>(frac));
    frac_text.insert(0, digits - frac_text.size(), '0');
    return sign + std::to_string(int_part) + "." + frac_text;
}

}  // namespace reconcile
