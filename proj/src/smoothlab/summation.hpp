#pragma once

#include <cmath>
#include <complex>

namespace smoothlab {

// Neumaier's variant of Kahan summation.
template <typename T>
class compensated_sum {
public:
    void add(T v) {
        const T t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    compensated_sum& operator+=(T v) {
        add(v);
        return *this;
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_{};
    T comp_{};
};

template <typename T>
class compensated_complex_sum {
public:
    void add(std::complex<T> v) {
        re_.add(v.real());
        im_.add(v.imag());
    }
    compensated_complex_sum& operator+=(std::complex<T> v) {
        add(v);
        return *this;
    }
    std::complex<T> value() const { return {re_.value(), im_.value()}; }

private:
    compensated_sum<T> re_;
    compensated_sum<T> im_;
};

}  // namespace smoothlab
