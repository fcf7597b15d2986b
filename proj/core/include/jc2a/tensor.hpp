#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstring>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "jc2a/errors.hpp"

namespace jc2a {

using Shape = std::vector<std::size_t>;

inline std::string shape_str(const Shape& shape) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) os << 'x';
        os << shape[i];
    }
    os << ']';
    return os.str();
}

inline std::size_t shape_numel(const Shape& shape) {
    std::size_t n = 1;
    for (std::size_t d : shape) {
        if (d == 0) throw ShapeError("dimension sizes must be >= 1, got " + shape_str(shape));
        n *= d;
    }
    return n;
}

// Dense row-major tensor. Values are treated as immutable once an operation
// returns them; all ops below are pure functions over const inputs.
template <typename T>
class TensorT {
public:
    using value_type = T;

    TensorT() = default;

    explicit TensorT(Shape shape) : shape_(std::move(shape)), data_(shape_numel(shape_), T(0)) {}

    TensorT(Shape shape, std::vector<T> data) : shape_(std::move(shape)), data_(std::move(data)) {
        if (shape_numel(shape_) != data_.size()) {
            throw ShapeError("shape " + shape_str(shape_) + " does not match buffer of " +
                             std::to_string(data_.size()) + " elements");
        }
    }

    const Shape& shape() const { return shape_; }
    std::size_t rank() const { return shape_.size(); }
    std::size_t dim(std::size_t i) const {
        if (i >= shape_.size()) throw IndexError("dim index " + std::to_string(i) + " out of range");
        return shape_[i];
    }
    std::size_t numel() const { return data_.size(); }

    const T* ptr() const { return data_.data(); }
    T* ptr() { return data_.data(); }
    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

    T operator[](std::size_t i) const { return data_[i]; }
    T& operator[](std::size_t i) { return data_[i]; }

    T at2(std::size_t i, std::size_t j) const { return data_[i * shape_[1] + j]; }
    T& at2(std::size_t i, std::size_t j) { return data_[i * shape_[1] + j]; }
    T at3(std::size_t i, std::size_t j, std::size_t k) const {
        return data_[(i * shape_[1] + j) * shape_[2] + k];
    }
    T& at3(std::size_t i, std::size_t j, std::size_t k) {
        return data_[(i * shape_[1] + j) * shape_[2] + k];
    }

    bool same_shape(const TensorT& other) const { return shape_ == other.shape_; }

    // Same data, new shape (element counts must agree).
    TensorT reshaped(Shape shape) const {
        if (shape_numel(shape) != data_.size()) {
            throw ShapeError("cannot reshape " + shape_str(shape_) + " to " + shape_str(shape));
        }
        return TensorT(std::move(shape), data_);
    }

private:
    Shape shape_;
    std::vector<T> data_;
};

using Tensor = TensorT<float>;
using TensorD = TensorT<double>;

template <typename T, typename U>
TensorT<T> tensor_cast(const TensorT<U>& t) {
    std::vector<T> out(t.numel());
    for (std::size_t i = 0; i < t.numel(); ++i) out[i] = static_cast<T>(t[i]);
    return TensorT<T>(t.shape(), std::move(out));
}

inline TensorD widen(const Tensor& t) { return tensor_cast<double>(t); }
inline Tensor narrow(const TensorD& t) { return tensor_cast<float>(t); }

namespace detail {

template <typename T>
void require_same_shape(const TensorT<T>& a, const TensorT<T>& b, const char* op) {
    if (!a.same_shape(b)) {
        throw ShapeError(std::string(op) + ": shape mismatch " + shape_str(a.shape()) + " vs " +
                         shape_str(b.shape()));
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Elementwise ops
// ---------------------------------------------------------------------------

template <typename T>
TensorT<T> add(const TensorT<T>& a, const TensorT<T>& b) {
    detail::require_same_shape(a, b, "add");
    TensorT<T> out(a.shape());
    for (std::size_t i = 0; i < a.numel(); ++i) out[i] = a[i] + b[i];
    return out;
}

template <typename T>
TensorT<T> sub(const TensorT<T>& a, const TensorT<T>& b) {
    detail::require_same_shape(a, b, "sub");
    TensorT<T> out(a.shape());
    for (std::size_t i = 0; i < a.numel(); ++i) out[i] = a[i] - b[i];
    return out;
}

template <typename T>
TensorT<T> mul(const TensorT<T>& a, const TensorT<T>& b) {
    detail::require_same_shape(a, b, "mul");
    TensorT<T> out(a.shape());
    for (std::size_t i = 0; i < a.numel(); ++i) out[i] = a[i] * b[i];
    return out;
}

template <typename T>
TensorT<T> scale(const TensorT<T>& a, T s) {
    TensorT<T> out(a.shape());
    for (std::size_t i = 0; i < a.numel(); ++i) out[i] = a[i] * s;
    return out;
}

template <typename T>
TensorT<T> relu(const TensorT<T>& t) {
    TensorT<T> out(t.shape());
    for (std::size_t i = 0; i < t.numel(); ++i) out[i] = t[i] > T(0) ? t[i] : T(0);
    return out;
}

template <typename T>
bool is_binary(const TensorT<T>& t) {
    for (std::size_t i = 0; i < t.numel(); ++i) {
        if (t[i] != T(0) && t[i] != T(1)) return false;
    }
    return true;
}

template <typename T>
void require_binary(const TensorT<T>& t, const char* what) {
    if (!is_binary(t)) throw ValidationError(std::string(what) + " must be binary {0,1}");
}

// ---------------------------------------------------------------------------
// Matrix multiply
// ---------------------------------------------------------------------------

template <typename T>
TensorT<T> matmul(const TensorT<T>& a, const TensorT<T>& b) {
    if (a.rank() != 2 || b.rank() != 2) {
        throw ShapeError("matmul expects rank-2 tensors, got " + shape_str(a.shape()) + " and " +
                         shape_str(b.shape()));
    }
    const std::size_t m = a.dim(0), k = a.dim(1), k2 = b.dim(0), n = b.dim(1);
    if (k != k2) {
        throw ShapeError("matmul inner dimensions differ: " + shape_str(a.shape()) + " x " +
                         shape_str(b.shape()));
    }
    TensorT<T> out(Shape{m, n});
    const T* ap = a.ptr();
    const T* bp = b.ptr();
    T* cp = out.ptr();
    for (std::size_t i = 0; i < m; ++i) {
        T* ci = cp + i * n;
        const T* ai = ap + i * k;
        for (std::size_t kk = 0; kk < k; ++kk) {
            const T aik = ai[kk];
            if (aik == T(0)) continue;
            const T* bk = bp + kk * n;
            for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
        }
    }
    return out;
}

// a^T * b for a: [t x m], b: [t x n] -> [m x n]; avoids materializing a^T.
template <typename T>
TensorT<T> matmul_tn(const TensorT<T>& a, const TensorT<T>& b) {
    if (a.rank() != 2 || b.rank() != 2 || a.dim(0) != b.dim(0)) {
        throw ShapeError("matmul_tn: incompatible shapes " + shape_str(a.shape()) + " and " +
                         shape_str(b.shape()));
    }
    const std::size_t t = a.dim(0), m = a.dim(1), n = b.dim(1);
    TensorT<T> out(Shape{m, n});
    T* cp = out.ptr();
    for (std::size_t tt = 0; tt < t; ++tt) {
        const T* at = a.ptr() + tt * m;
        const T* bt = b.ptr() + tt * n;
        for (std::size_t i = 0; i < m; ++i) {
            const T av = at[i];
            if (av == T(0)) continue;
            T* ci = cp + i * n;
            for (std::size_t j = 0; j < n; ++j) ci[j] += av * bt[j];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Softmax
// ---------------------------------------------------------------------------

// Numerically stabilized softmax along `axis`; every slice sums to 1.
template <typename T>
TensorT<T> softmax(const TensorT<T>& t, std::size_t axis) {
    if (axis >= t.rank()) {
        throw IndexError("softmax axis " + std::to_string(axis) + " out of range for rank " +
                         std::to_string(t.rank()));
    }
    std::size_t outer = 1, inner = 1;
    for (std::size_t i = 0; i < axis; ++i) outer *= t.dim(i);
    for (std::size_t i = axis + 1; i < t.rank(); ++i) inner *= t.dim(i);
    const std::size_t n = t.dim(axis);

    TensorT<T> out(t.shape());
    const T* src = t.ptr();
    T* dst = out.ptr();

    if (inner == 1) {
        // Contiguous slices.
        for (std::size_t o = 0; o < outer; ++o) {
            const T* s = src + o * n;
            T* d = dst + o * n;
            T mx = s[0];
            for (std::size_t i = 1; i < n; ++i) mx = std::max(mx, s[i]);
            T sum = T(0);
            for (std::size_t i = 0; i < n; ++i) {
                d[i] = std::exp(s[i] - mx);
                sum += d[i];
            }
            const T inv = T(1) / sum;
            for (std::size_t i = 0; i < n; ++i) d[i] *= inv;
        }
        return out;
    }

    std::vector<T> mx(inner), sum(inner);
    for (std::size_t o = 0; o < outer; ++o) {
        const T* base = src + o * n * inner;
        T* obase = dst + o * n * inner;
        std::copy(base, base + inner, mx.begin());
        for (std::size_t a = 1; a < n; ++a) {
            const T* row = base + a * inner;
            for (std::size_t i = 0; i < inner; ++i) mx[i] = std::max(mx[i], row[i]);
        }
        std::fill(sum.begin(), sum.end(), T(0));
        for (std::size_t a = 0; a < n; ++a) {
            const T* row = base + a * inner;
            T* orow = obase + a * inner;
            for (std::size_t i = 0; i < inner; ++i) {
                orow[i] = std::exp(row[i] - mx[i]);
                sum[i] += orow[i];
            }
        }
        for (std::size_t i = 0; i < inner; ++i) sum[i] = T(1) / sum[i];
        for (std::size_t a = 0; a < n; ++a) {
            T* orow = obase + a * inner;
            for (std::size_t i = 0; i < inner; ++i) orow[i] *= sum[i];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Masked product
// ---------------------------------------------------------------------------

// Hadamard product of every channel of f [C x H x W] with a binary mask [H x W].
template <typename T>
TensorT<T> masked_product(const TensorT<T>& f, const TensorT<T>& mask) {
    if (f.rank() != 3 || mask.rank() != 2 || f.dim(1) != mask.dim(0) || f.dim(2) != mask.dim(1)) {
        throw ShapeError("masked_product: features " + shape_str(f.shape()) + " vs mask " +
                         shape_str(mask.shape()));
    }
    require_binary(mask, "mask");
    const std::size_t c = f.dim(0), hw = mask.numel();
    TensorT<T> out(f.shape());
    for (std::size_t ch = 0; ch < c; ++ch) {
        const T* src = f.ptr() + ch * hw;
        T* dst = out.ptr() + ch * hw;
        for (std::size_t i = 0; i < hw; ++i) dst[i] = src[i] * mask[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reductions and comparisons
// ---------------------------------------------------------------------------

template <typename T>
double sum(const TensorT<T>& t) {
    double s = 0.0;
    for (std::size_t i = 0; i < t.numel(); ++i) s += static_cast<double>(t[i]);
    return s;
}

template <typename T>
double mean(const TensorT<T>& t) {
    if (t.numel() == 0) throw ArgumentError("mean of empty tensor");
    return sum(t) / static_cast<double>(t.numel());
}

template <typename T>
double max_abs(const TensorT<T>& t) {
    double m = 0.0;
    for (std::size_t i = 0; i < t.numel(); ++i) m = std::max(m, std::abs(static_cast<double>(t[i])));
    return m;
}

template <typename A, typename B>
double max_abs_diff(const TensorT<A>& a, const TensorT<B>& b) {
    if (a.shape() != b.shape()) {
        throw ShapeError("max_abs_diff: shape mismatch " + shape_str(a.shape()) + " vs " +
                         shape_str(b.shape()));
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.numel(); ++i) {
        m = std::max(m, std::abs(static_cast<double>(a[i]) - static_cast<double>(b[i])));
    }
    return m;
}

// Relative closeness in the max norm: max|a-b| <= rtol * max(|a|_inf, |b|_inf).
// Two all-zero tensors compare equal at any tolerance.
template <typename A, typename B>
bool allclose_rel(const TensorT<A>& a, const TensorT<B>& b, double rtol) {
    const double scale = std::max(max_abs(a), max_abs(b));
    if (scale == 0.0) return true;
    return max_abs_diff(a, b) <= rtol * scale;
}

template <typename A, typename B>
bool allclose_abs(const TensorT<A>& a, const TensorT<B>& b, double atol) {
    return max_abs_diff(a, b) <= atol;
}

template <typename T>
bool all_finite(const TensorT<T>& t) {
    for (std::size_t i = 0; i < t.numel(); ++i) {
        if (!std::isfinite(static_cast<double>(t[i]))) return false;
    }
    return true;
}

template <typename T>
bool bit_equal(const TensorT<T>& a, const TensorT<T>& b) {
    if (a.shape() != b.shape()) return false;
    return std::memcmp(a.ptr(), b.ptr(), a.numel() * sizeof(T)) == 0;
}

}  // namespace jc2a
