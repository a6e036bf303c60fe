#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sfcna {

/// Exact money amount in million euro with 0.01 resolution, stored as
/// integer hundredths. All ledger arithmetic is overflow-checked.
class Money {
public:
    constexpr Money() = default;

    static constexpr Money from_cents(std::int64_t cents) { return Money(cents); }
    static constexpr Money units(std::int64_t whole) { return Money(whole * 100); }

    /// Accepts "-12", "105771", "0.5", "12.34". At most two decimals,
    /// no exponent, no thousands separators.
    static Money parse(std::string_view text);

    constexpr std::int64_t cents() const { return cents_; }
    constexpr bool is_zero() const { return cents_ == 0; }

    /// Fixed-point rendering with two decimals, e.g. "-4219.00".
    std::string str() const;

    Money operator-() const;
    Money& operator+=(Money other);
    Money& operator-=(Money other);
    friend Money operator+(Money a, Money b) { return a += b; }
    friend Money operator-(Money a, Money b) { return a -= b; }
    friend Money operator*(Money a, std::int64_t k);

    friend constexpr bool operator==(Money, Money) = default;
    friend constexpr auto operator<=>(Money, Money) = default;

private:
    constexpr explicit Money(std::int64_t cents) : cents_(cents) {}
    std::int64_t cents_ = 0;
};

Money abs(Money m);
Money sum(std::span<const Money> values);

/// Non-negative fixed-point ratio with 1e-12 resolution. Used for
/// allocation shares and behavioural rates so that "shares sum to one"
/// is an exact integer comparison.
class Ratio {
public:
    static constexpr std::int64_t kScale = 1'000'000'000'000;

    constexpr Ratio() = default;
    static constexpr Ratio from_raw(std::int64_t raw) { return Ratio(raw); }
    static constexpr Ratio one() { return Ratio(kScale); }
    static constexpr Ratio zero() { return Ratio(0); }

    /// num / den rounded to the nearest representable value. den != 0.
    static Ratio of(Money num, Money den);
    static Ratio of(std::int64_t num, std::int64_t den);
    /// Decimal text with at most 12 fractional digits, e.g. "1.1", "0.98".
    static Ratio parse(std::string_view text);

    constexpr std::int64_t raw() const { return raw_; }
    double to_double() const { return static_cast<double>(raw_) / static_cast<double>(kScale); }
    std::string str() const;

    /// base * ratio rounded half away from zero to the cent.
    Money apply(Money base) const;
    friend Ratio operator*(Ratio a, Ratio b);

    friend constexpr bool operator==(Ratio, Ratio) = default;
    friend constexpr auto operator<=>(Ratio, Ratio) = default;

private:
    constexpr explicit Ratio(std::int64_t raw) : raw_(raw) {}
    std::int64_t raw_ = 0;
};

/// Splits `pool` into parts proportional to `shares` with the
/// largest-remainder method; the parts always sum to exactly `pool`.
/// Shares must be non-negative and sum to exactly Ratio::one(). Ties
/// go to the lower index.
std::vector<Money> apportion(Money pool, std::span<const Ratio> shares);

/// Mean of ratios, rounded to the nearest representable value.
Ratio mean(std::span<const Ratio> values);

/// Rescales non-negative weights into shares that sum to exactly one.
/// All-zero weights yield uniform shares.
std::vector<Ratio> normalize(std::span<const Ratio> weights);

} // namespace sfcna
