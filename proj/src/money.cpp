#include "sfcna/money.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sfcna {

namespace {

__extension__ typedef __int128 i128;

std::int64_t checked_narrow(i128 v, const char* what)
{
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error(std::string(what) + ": value out of range");
    return static_cast<std::int64_t>(v);
}

// Rounds num/den half away from zero; den > 0.
i128 round_div(i128 num, i128 den)
{
    i128 q = num / den;
    i128 r = num % den;
    if (r < 0)
        r = -r;
    if (2 * r >= den)
        q += (num < 0) ? -1 : 1;
    return q;
}

// Parses "[-]digits[.digits]" into an integer scaled by 10^max_decimals.
std::int64_t parse_fixed(std::string_view text, int max_decimals, const char* what)
{
    auto fail = [&](const char* why) {
        throw std::invalid_argument(std::string("invalid ") + what + " '" + std::string(text) + "': " + why);
    };
    std::string_view s = text;
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    if (s.empty())
        fail("empty");
    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto dot = s.find('.');
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (whole.empty() && frac.empty())
        fail("no digits");
    if (dot != std::string_view::npos && frac.empty())
        fail("trailing decimal point");
    if (static_cast<int>(frac.size()) > max_decimals)
        fail("too many decimals");
    auto all_digits = [](std::string_view d) {
        return std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!all_digits(whole) || !all_digits(frac))
        fail("unexpected character");

    i128 value = 0;
    for (char c : whole) {
        value = value * 10 + (c - '0');
        if (value > INT64_MAX)
            fail("out of range");
    }
    for (int i = 0; i < max_decimals; ++i) {
        value *= 10;
        if (i < static_cast<int>(frac.size()))
            value += frac[static_cast<std::size_t>(i)] - '0';
        if (value > INT64_MAX)
            fail("out of range");
    }
    return static_cast<std::int64_t>(negative ? -value : value);
}

std::string render_fixed(std::int64_t raw, std::int64_t scale, int decimals)
{
    i128 v = raw;
    bool negative = v < 0;
    if (negative)
        v = -v;
    auto whole = static_cast<unsigned long long>(v / scale);
    auto frac = static_cast<unsigned long long>(v % scale);
    std::string f = std::to_string(frac);
    f.insert(0, static_cast<std::size_t>(decimals) - f.size(), '0');
    return (negative ? "-" : "") + std::to_string(whole) + "." + f;
}

} // namespace

Money Money::parse(std::string_view text) { return Money(parse_fixed(text, 2, "money amount")); }

std::string Money::str() const { return render_fixed(cents_, 100, 2); }

Money Money::operator-() const
{
    if (cents_ == INT64_MIN)
        throw std::overflow_error("money negation overflow");
    return Money(-cents_);
}

Money& Money::operator+=(Money other)
{
    if (__builtin_add_overflow(cents_, other.cents_, &cents_))
        throw std::overflow_error("money addition overflow");
    return *this;
}

Money& Money::operator-=(Money other)
{
    if (__builtin_sub_overflow(cents_, other.cents_, &cents_))
        throw std::overflow_error("money subtraction overflow");
    return *this;
}

Money operator*(Money a, std::int64_t k)
{
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a.cents_, k, &out))
        throw std::overflow_error("money multiplication overflow");
    return Money(out);
}

Money abs(Money m) { return m < Money{} ? -m : m; }

Money sum(std::span<const Money> values)
{
    return std::accumulate(values.begin(), values.end(), Money{});
}

Ratio Ratio::of(Money num, Money den) { return of(num.cents(), den.cents()); }

Ratio Ratio::of(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        throw std::domain_error("ratio with zero denominator");
    i128 n = static_cast<i128>(num) * kScale;
    i128 d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return Ratio(checked_narrow(round_div(n, d), "ratio"));
}

Ratio Ratio::parse(std::string_view text)
{
    const std::int64_t raw = parse_fixed(text, 12, "ratio");
    if (raw < 0)
        throw std::invalid_argument("invalid ratio '" + std::string(text) + "': negative");
    return Ratio(raw);
}

std::string Ratio::str() const
{
    std::string s = render_fixed(raw_, kScale, 12);
    while (s.back() == '0')
        s.pop_back();
    if (s.back() == '.')
        s.pop_back();
    return s;
}

Money Ratio::apply(Money base) const
{
    i128 n = static_cast<i128>(base.cents()) * raw_;
    return Money::from_cents(checked_narrow(round_div(n, kScale), "ratio application"));
}

Ratio operator*(Ratio a, Ratio b)
{
    i128 n = static_cast<i128>(a.raw_) * b.raw_;
    return Ratio(checked_narrow(round_div(n, Ratio::kScale), "ratio product"));
}

std::vector<Money> apportion(Money pool, std::span<const Ratio> shares)
{
    i128 total = 0;
    for (auto s : shares) {
        if (s.raw() < 0)
            throw std::invalid_argument("negative allocation share");
        total += s.raw();
    }
    if (shares.empty() || total != Ratio::kScale)
        throw std::invalid_argument("allocation shares do not sum to one");

    const bool negative = pool < Money{};
    const i128 magnitude = negative ? -static_cast<i128>(pool.cents()) : pool.cents();

    std::vector<i128> floors(shares.size());
    std::vector<i128> remainders(shares.size());
    i128 assigned = 0;
    for (std::size_t i = 0; i < shares.size(); ++i) {
        i128 n = magnitude * shares[i].raw();
        floors[i] = n / Ratio::kScale;
        remainders[i] = n % Ratio::kScale;
        assigned += floors[i];
    }
    std::vector<std::size_t> order(shares.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
    for (std::size_t k = 0; assigned < magnitude; ++k, ++assigned)
        floors[order[k % order.size()]] += 1;

    std::vector<Money> out;
    out.reserve(shares.size());
    for (auto f : floors) {
        auto c = static_cast<std::int64_t>(f);
        out.push_back(Money::from_cents(negative ? -c : c));
    }
    return out;
}

Ratio mean(std::span<const Ratio> values)
{
    if (values.empty())
        throw std::invalid_argument("mean of no values");
    i128 total = 0;
    for (auto v : values)
        total += v.raw();
    return Ratio::from_raw(checked_narrow(round_div(total, static_cast<i128>(values.size())), "mean"));
}

std::vector<Ratio> normalize(std::span<const Ratio> weights)
{
    if (weights.empty())
        return {};
    i128 total = 0;
    for (auto w : weights) {
        if (w.raw() < 0)
            throw std::invalid_argument("negative weight");
        total += w.raw();
    }
    std::vector<Ratio> out;
    out.reserve(weights.size());
    if (total == 0) {
        const auto n = static_cast<std::int64_t>(weights.size());
        const std::int64_t each = Ratio::kScale / n;
        const std::int64_t rest = Ratio::kScale - each * n;
        for (std::int64_t i = 0; i < n; ++i)
            out.push_back(Ratio::from_raw(each + (i < rest ? 1 : 0)));
        return out;
    }
    // Largest remainder over the scaled weights.
    std::vector<i128> floors(weights.size());
    std::vector<i128> rem(weights.size());
    i128 assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        i128 n = static_cast<i128>(weights[i].raw()) * Ratio::kScale;
        floors[i] = n / total;
        rem[i] = n % total;
        assigned += floors[i];
    }
    std::vector<std::size_t> order(weights.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
    for (std::size_t k = 0; assigned < Ratio::kScale; ++k, ++assigned)
        floors[order[k % order.size()]] += 1;
    for (auto f : floors)
        out.push_back(Ratio::from_raw(static_cast<std::int64_t>(f)));
    return out;
}

} // namespace sfcna
