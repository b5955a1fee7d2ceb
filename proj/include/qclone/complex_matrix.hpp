// Dense complex matrices for few-party quantum systems: Kronecker products,
// partial trace, partial transpose, and Hermitian eigenvalues via cyclic
// Jacobi rotations. Everything here is sized for local dimensions d <= ~8
// per party, so plain O(n^3) dense arithmetic is used throughout.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace qclone {

using Complex = std::complex<double>;

// Input validation bound: matrices are accepted as Hermitian when
// max |a - a^dagger| <= kHermitianTol. Looser than the Jacobi convergence
// bound because inputs arrive from chains of floating arithmetic.
inline constexpr double kHermitianTol = 1e-10;

// Jacobi sweep terminates when the off-diagonal Frobenius norm drops below
// this bound.
inline constexpr double kJacobiOffDiagTol = 1e-13;

class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
        if (entries_.size() != rows * cols)
            throw std::invalid_argument("ComplexMatrix: entry count does not match dimensions");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(const std::vector<double>& values) {
        ComplexMatrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
        return m;
    }

    // n x 1 column vector.
    static ComplexMatrix column(std::vector<Complex> values) {
        const std::size_t n = values.size();
        return ComplexMatrix(n, 1, std::move(values));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<Complex>& entries() const { return entries_; }

    Complex trace() const {
        require_square("trace");
        Complex t = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    ComplexMatrix operator+(const ComplexMatrix& other) const {
        require_same_shape(other, "operator+");
        ComplexMatrix out = *this;
        for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] += other.entries_[k];
        return out;
    }

    ComplexMatrix operator-(const ComplexMatrix& other) const {
        require_same_shape(other, "operator-");
        ComplexMatrix out = *this;
        for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] -= other.entries_[k];
        return out;
    }

    ComplexMatrix operator*(const ComplexMatrix& other) const {
        if (cols_ != other.rows_)
            throw std::invalid_argument("ComplexMatrix: inner dimensions do not match");
        ComplexMatrix out(rows_, other.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Complex aik = (*this)(i, k);
                if (aik == 0.0) continue;
                for (std::size_t j = 0; j < other.cols_; ++j)
                    out(i, j) += aik * other(k, j);
            }
        return out;
    }

    friend ComplexMatrix operator*(Complex scalar, const ComplexMatrix& m) {
        ComplexMatrix out = m;
        for (auto& e : out.entries_) e *= scalar;
        return out;
    }

    ComplexMatrix operator*(Complex scalar) const { return scalar * (*this); }

    double max_abs_diff(const ComplexMatrix& other) const {
        require_same_shape(other, "max_abs_diff");
        double m = 0.0;
        for (std::size_t k = 0; k < entries_.size(); ++k)
            m = std::max(m, std::abs(entries_[k] - other.entries_[k]));
        return m;
    }

    double hermiticity_defect() const {
        require_square("hermiticity_defect");
        double m = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return m;
    }

    bool is_hermitian(double tol = kHermitianTol) const { return hermiticity_defect() <= tol; }

    void require_square(const char* op) const {
        if (!is_square())
            throw std::invalid_argument(std::string(op) + ": matrix must be square");
    }

private:
    void require_same_shape(const ComplexMatrix& other, const char* op) const {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            throw std::invalid_argument(std::string(op) + ": dimension mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

// Per-party local dimensions of a tensor factorization. Party 0 is the
// leftmost factor.
struct SubsystemShape {
    std::vector<std::size_t> dims;

    SubsystemShape(std::initializer_list<std::size_t> d) : dims(d) { validate(); }
    explicit SubsystemShape(std::vector<std::size_t> d) : dims(std::move(d)) { validate(); }

    std::size_t total() const {
        std::size_t p = 1;
        for (std::size_t d : dims) p *= d;
        return p;
    }

    std::size_t parties() const { return dims.size(); }

    void require_matches(const ComplexMatrix& m) const {
        m.require_square("SubsystemShape");
        if (total() != m.rows())
            throw std::invalid_argument("SubsystemShape: product of dims does not match matrix dimension");
    }

private:
    void validate() const {
        if (dims.empty())
            throw std::invalid_argument("SubsystemShape: needs at least one party");
        for (std::size_t d : dims)
            if (d == 0) throw std::invalid_argument("SubsystemShape: dims must be positive");
    }
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == 0.0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

inline ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(j, i) = std::conj(a(i, j));
    return out;
}

namespace detail {

// Digits of idx in the mixed-radix system given by dims (party 0 is the
// most significant digit, matching the kron layout).
inline void decode_index(std::size_t idx, const std::vector<std::size_t>& dims,
                         std::vector<std::size_t>& digits) {
    digits.resize(dims.size());
    for (std::size_t p = dims.size(); p-- > 0;) {
        digits[p] = idx % dims[p];
        idx /= dims[p];
    }
}

inline std::size_t encode_index(const std::vector<std::size_t>& digits,
                                const std::vector<std::size_t>& dims) {
    std::size_t idx = 0;
    for (std::size_t p = 0; p < dims.size(); ++p) idx = idx * dims[p] + digits[p];
    return idx;
}

}  // namespace detail

// Reduced density matrix over the kept parties; the remaining parties are
// summed out. Trace is preserved.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, const SubsystemShape& shape,
                                   const std::vector<std::size_t>& keep) {
    shape.require_matches(rho);
    std::vector<std::size_t> kept = keep;
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
        throw std::invalid_argument("partial_trace: duplicate party index");
    for (std::size_t p : kept)
        if (p >= shape.parties())
            throw std::invalid_argument("partial_trace: party index out of range");
    if (kept.empty())
        throw std::invalid_argument("partial_trace: must keep at least one party");

    std::vector<std::size_t> traced;
    for (std::size_t p = 0; p < shape.parties(); ++p)
        if (!std::binary_search(kept.begin(), kept.end(), p)) traced.push_back(p);

    std::vector<std::size_t> kept_dims, traced_dims;
    for (std::size_t p : kept) kept_dims.push_back(shape.dims[p]);
    for (std::size_t p : traced) traced_dims.push_back(shape.dims[p]);

    std::size_t kept_total = 1, traced_total = 1;
    for (std::size_t d : kept_dims) kept_total *= d;
    for (std::size_t d : traced_dims) traced_total *= d;

    ComplexMatrix out(kept_total, kept_total);
    std::vector<std::size_t> rk, ck, t, full_row(shape.parties()), full_col(shape.parties());
    for (std::size_t r = 0; r < kept_total; ++r) {
        detail::decode_index(r, kept_dims, rk);
        for (std::size_t c = 0; c < kept_total; ++c) {
            detail::decode_index(c, kept_dims, ck);
            Complex sum = 0.0;
            for (std::size_t s = 0; s < traced_total; ++s) {
                detail::decode_index(s, traced_dims, t);
                for (std::size_t i = 0; i < kept.size(); ++i) {
                    full_row[kept[i]] = rk[i];
                    full_col[kept[i]] = ck[i];
                }
                for (std::size_t i = 0; i < traced.size(); ++i) {
                    full_row[traced[i]] = t[i];
                    full_col[traced[i]] = t[i];
                }
                sum += rho(detail::encode_index(full_row, shape.dims),
                           detail::encode_index(full_col, shape.dims));
            }
            out(r, c) = sum;
        }
    }
    return out;
}

// Transpose of the chosen party's indices in a two-party state.
inline ComplexMatrix partial_transpose(const ComplexMatrix& rho, const SubsystemShape& shape,
                                       std::size_t party) {
    shape.require_matches(rho);
    if (shape.parties() != 2)
        throw std::invalid_argument("partial_transpose: shape must have exactly two parties");
    if (party >= 2)
        throw std::invalid_argument("partial_transpose: party index out of range");

    const std::size_t da = shape.dims[0], db = shape.dims[1];
    ComplexMatrix out(rho.rows(), rho.cols());
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j)
            for (std::size_t k = 0; k < da; ++k)
                for (std::size_t l = 0; l < db; ++l) {
                    if (party == 0)
                        out(i * db + j, k * db + l) = rho(k * db + j, i * db + l);
                    else
                        out(i * db + j, k * db + l) = rho(i * db + l, k * db + j);
                }
    return out;
}

// Eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi rotations.
// Each rotation is the complex analogue of the classical symmetric Jacobi
// step: for the 2x2 pivot block [[a, b], [conj(b), d]] with b = m e^{i alpha},
// the unitary [[c, -conj(s)], [s, c]] with s = t c e^{-i alpha} and
// t the small root of t^2 - 2 tau t - 1 = 0, tau = (d - a) / (2 m),
// annihilates the off-diagonal pair.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
    a.require_square("hermitian_eigenvalues");
    if (!a.is_hermitian())
        throw std::invalid_argument("hermitian_eigenvalues: input is not Hermitian within 1e-10");

    const std::size_t n = a.rows();
    // Symmetrize roundoff so the iteration works on an exactly Hermitian array.
    ComplexMatrix w(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            w(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));

    auto off_diagonal_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(w(i, j));
        return std::sqrt(s);
    };

    const int max_sweeps = 60;
    int sweep = 0;
    while (off_diagonal_norm() >= kJacobiOffDiagTol) {
        if (++sweep > max_sweeps)
            throw std::runtime_error("hermitian_eigenvalues: Jacobi iteration did not converge");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = w(p, q);
                const double m = std::abs(apq);
                if (m == 0.0) continue;
                const double app = w(p, p).real();
                const double aqq = w(q, q).real();
                const double tau = (aqq - app) / (2.0 * m);
                double t;
                if (tau == 0.0)
                    t = 1.0;
                else
                    t = -std::copysign(1.0, tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const Complex s = (t * c) * std::conj(apq / m);

                // Column update: W <- W J.
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex wkp = w(k, p), wkq = w(k, q);
                    w(k, p) = c * wkp + s * wkq;
                    w(k, q) = -std::conj(s) * wkp + c * wkq;
                }
                // Row update: W <- J^dagger W.
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex wpk = w(p, k), wqk = w(q, k);
                    w(p, k) = c * wpk + std::conj(s) * wqk;
                    w(q, k) = -s * wpk + c * wqk;
                }
                w(p, q) = 0.0;
                w(q, p) = 0.0;
            }
        }
    }

    std::vector<double> eigenvalues(n);
    for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = w(i, i).real();
    std::sort(eigenvalues.begin(), eigenvalues.end());
    return eigenvalues;
}

// Squared Hilbert-Schmidt distance Tr[(a - b)^2] of two Hermitian matrices.
// For a Hermitian difference M this equals the squared Frobenius norm.
inline double hs_distance_sq(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("hs_distance_sq: dimension mismatch");
    if (!a.is_hermitian() || !b.is_hermitian())
        throw std::invalid_argument("hs_distance_sq: inputs must be Hermitian");
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            s += std::norm(a(i, j) - b(i, j));
    return s;
}

}  // namespace qclone
