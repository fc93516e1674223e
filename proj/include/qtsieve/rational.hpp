#pragma once

#include <numeric>
#include <stdexcept>
#include <string>

namespace qtsieve {

// Exact rational on 64-bit numerator/denominator with 128-bit intermediates.
// Denominator kept positive, fraction reduced.
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    static Rat from_i128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rat: overflow after reduction");
        return Rat(static_cast<long long>(n), static_cast<long long>(d));
    }

    Rat operator+(const Rat& o) const {
        return from_i128(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den,
                         static_cast<__int128>(den) * o.den);
    }
    Rat operator-(const Rat& o) const {
        return from_i128(static_cast<__int128>(num) * o.den - static_cast<__int128>(o.num) * den,
                         static_cast<__int128>(den) * o.den);
    }
    Rat operator*(const Rat& o) const {
        return from_i128(static_cast<__int128>(num) * o.num, static_cast<__int128>(den) * o.den);
    }
    Rat operator/(const Rat& o) const {
        if (o.num == 0) throw std::domain_error("Rat: division by zero");
        return from_i128(static_cast<__int128>(num) * o.den, static_cast<__int128>(den) * o.num);
    }
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const {
        return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
    }
    bool operator<=(const Rat& o) const { return *this < o || *this == o; }
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator>=(const Rat& o) const { return o <= *this; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

} // namespace qtsieve
