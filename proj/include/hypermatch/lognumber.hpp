#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace hypermatch {

/// Signed number stored as sign plus natural-log magnitude, for quantities
/// like C(2^n - 1, k) that overflow any fixed width. Sign 0 means exact
/// zero and the magnitude is ignored. Multiplication and division are exact
/// in log space; addition and subtraction go through log-sum-exp.
class LogNumber {
public:
    constexpr LogNumber() = default;

    static LogNumber zero() { return LogNumber(); }

    static LogNumber one() { return from_ln(0.0); }

    /// Value sign * e^ln_mag.
    static LogNumber from_ln(double ln_mag, int sign = +1) {
        LogNumber x;
        if (sign == 0 || ln_mag == -std::numeric_limits<double>::infinity()) return x;
        x.sign_ = sign < 0 ? -1 : +1;
        x.ln_ = ln_mag;
        return x;
    }

    static LogNumber from_value(double v) {
        if (v == 0.0) return zero();
        return from_ln(std::log(std::abs(v)), v < 0 ? -1 : +1);
    }

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }

    /// ln|x|; -inf for zero.
    double ln_magnitude() const {
        return sign_ == 0 ? -std::numeric_limits<double>::infinity() : ln_;
    }

    /// log10|x|; -inf for zero.
    double log10_magnitude() const { return ln_magnitude() / kLn10; }

    /// sign * e^ln; overflows to +-inf for huge magnitudes.
    double value() const {
        if (sign_ == 0) return 0.0;
        return sign_ * std::exp(ln_);
    }

    /// Presentation value for probability-like bounds: min(1, max(0, x)).
    double clamped01() const {
        if (sign_ <= 0) return 0.0;
        return ln_ >= 0.0 ? 1.0 : std::exp(ln_);
    }

    friend LogNumber operator*(const LogNumber& a, const LogNumber& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return zero();
        return from_ln(a.ln_ + b.ln_, a.sign_ * b.sign_);
    }

    friend LogNumber operator/(const LogNumber& a, const LogNumber& b) {
        if (b.sign_ == 0) {
            if (a.sign_ == 0) return zero();
            return from_ln(std::numeric_limits<double>::infinity(), a.sign_);
        }
        if (a.sign_ == 0) return zero();
        return from_ln(a.ln_ - b.ln_, a.sign_ * b.sign_);
    }

    friend LogNumber operator+(const LogNumber& a, const LogNumber& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        if (a.sign_ == b.sign_) {
            double hi = a.ln_, lo = b.ln_;
            if (hi < lo) std::swap(hi, lo);
            return from_ln(hi + std::log1p(std::exp(lo - hi)), a.sign_);
        }
        // Opposite signs: magnitude subtraction.
        if (a.ln_ == b.ln_) return zero();
        const bool a_bigger = a.ln_ > b.ln_;
        const double hi = a_bigger ? a.ln_ : b.ln_;
        const double lo = a_bigger ? b.ln_ : a.ln_;
        return from_ln(hi + std::log1p(-std::exp(lo - hi)), a_bigger ? a.sign_ : b.sign_);
    }

    friend LogNumber operator-(const LogNumber& a, const LogNumber& b) {
        LogNumber nb = b;
        nb.sign_ = -nb.sign_;
        return a + nb;
    }

    /// Numeric order (not magnitude order).
    friend bool operator<(const LogNumber& a, const LogNumber& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
        if (a.sign_ == 0) return false;
        return a.sign_ > 0 ? a.ln_ < b.ln_ : a.ln_ > b.ln_;
    }
    friend bool operator>(const LogNumber& a, const LogNumber& b) { return b < a; }
    friend bool operator<=(const LogNumber& a, const LogNumber& b) { return !(b < a); }
    friend bool operator>=(const LogNumber& a, const LogNumber& b) { return !(a < b); }

private:
    static constexpr double kLn10 = 2.302585092994045684;

    int sign_ = 0;
    double ln_ = -std::numeric_limits<double>::infinity();
};

} // namespace hypermatch
