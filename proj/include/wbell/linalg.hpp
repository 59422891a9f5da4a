#ifndef WBELL_LINALG_HPP
#define WBELL_LINALG_HPP

// Dense complex linear algebra for a handful of qubits (dimension <= 64).
// Storage is Eigen; the wrappers below pin down the square-matrix and
// unit-norm invariants the rest of the library relies on.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wbell/error.hpp"

namespace wbell {

using cplx = std::complex<double>;

/// Absolute tolerance on the largest entry of m - m^dagger.
inline constexpr double kHermitianTol = 1e-10;

/// Largest dimension any routine in this library is sized for.
inline constexpr std::size_t kMaxDim = 64;

class ComplexMatrix {
public:
    using Storage = Eigen::MatrixXcd;

    /// dim x dim zero matrix.
    explicit ComplexMatrix(std::size_t dim) : m_(Storage::Zero(as_index(dim), as_index(dim))) {
        if (dim == 0) throw DimensionError("ComplexMatrix: dimension must be positive");
    }

    explicit ComplexMatrix(Storage m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols() || m_.rows() == 0)
            throw DimensionError("ComplexMatrix: expected a non-empty square matrix, got " +
                                 std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
    }

    /// Row-major nested list; every row must have the same length as the list.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
        : ComplexMatrix(rows.size()) {
        Eigen::Index r = 0;
        for (const auto& row : rows) {
            if (row.size() != rows.size()) throw DimensionError("ComplexMatrix: ragged initializer");
            Eigen::Index c = 0;
            for (const auto& v : row) m_(r, c++) = v;
            ++r;
        }
    }

    static ComplexMatrix identity(std::size_t dim) {
        return ComplexMatrix(Storage::Identity(as_index(dim), as_index(dim)));
    }

    static ComplexMatrix diagonal(std::span<const cplx> d) {
        ComplexMatrix out(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) out.m_(as_index(i), as_index(i)) = d[i];
        return out;
    }

    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

    cplx operator()(std::size_t r, std::size_t c) const { return m_(as_index(r), as_index(c)); }
    cplx& operator()(std::size_t r, std::size_t c) { return m_(as_index(r), as_index(c)); }

    const Storage& eigen() const noexcept { return m_; }

    ComplexMatrix adjoint() const { return ComplexMatrix(Storage(m_.adjoint())); }
    cplx trace() const { return m_.trace(); }

    /// Largest absolute entry.
    double max_abs() const { return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff(); }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        check_same(a, b, "operator*");
        return ComplexMatrix(Storage(a.m_ * b.m_));
    }
    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
        check_same(a, b, "operator+");
        return ComplexMatrix(Storage(a.m_ + b.m_));
    }
    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
        check_same(a, b, "operator-");
        return ComplexMatrix(Storage(a.m_ - b.m_));
    }
    friend ComplexMatrix operator*(cplx s, const ComplexMatrix& a) { return ComplexMatrix(Storage(s * a.m_)); }
    friend ComplexMatrix operator*(const ComplexMatrix& a, cplx s) { return s * a; }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same(*this, o, "operator+=");
        m_ += o.m_;
        return *this;
    }

private:
    static Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

    static void check_same(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
        if (a.dim() != b.dim())
            throw DimensionError(std::string(op) + ": dimension mismatch " + std::to_string(a.dim()) +
                                 " vs " + std::to_string(b.dim()));
    }

    Storage m_;
};

/// Largest absolute entry of a - b.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).max_abs(); }

inline bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol) {
    return (m.eigen() - m.eigen().adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_unitary(const ComplexMatrix& m, double tol = 1e-12) {
    const auto n = static_cast<Eigen::Index>(m.dim());
    return (m.eigen().adjoint() * m.eigen() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <= tol;
}

/// Unit-norm complex vector.
class StateVector {
public:
    using Storage = Eigen::VectorXcd;

    /// Normalizes `amps`; a zero vector is rejected.
    explicit StateVector(Storage amps) : v_(std::move(amps)) {
        if (v_.size() == 0) throw DimensionError("StateVector: empty");
        const double n = v_.norm();
        if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("StateVector: cannot normalize a zero vector");
        v_ /= n;
    }

    StateVector(std::initializer_list<cplx> amps) : StateVector(from_list(amps)) {}

    /// Computational basis vector |index>.
    static StateVector basis(std::size_t dim, std::size_t index) {
        if (index >= dim) throw DimensionError("StateVector::basis: index out of range");
        Storage v = Storage::Zero(static_cast<Eigen::Index>(dim));
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return StateVector(std::move(v));
    }

    std::size_t dim() const noexcept { return static_cast<std::size_t>(v_.size()); }
    cplx operator[](std::size_t i) const { return v_(static_cast<Eigen::Index>(i)); }
    const Storage& eigen() const noexcept { return v_; }

    /// |v><v|
    ComplexMatrix projector() const { return ComplexMatrix(ComplexMatrix::Storage(v_ * v_.adjoint())); }

private:
    static Storage from_list(std::initializer_list<cplx> amps) {
        Storage v(static_cast<Eigen::Index>(amps.size()));
        Eigen::Index i = 0;
        for (const auto& a : amps) v(i++) = a;
        return v;
    }

    Storage v_;
};

/// Kronecker product; entry ((i1,i2),(j1,j2)) = a(i1,j1) * b(i2,j2).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const auto na = static_cast<Eigen::Index>(a.dim());
    const auto nb = static_cast<Eigen::Index>(b.dim());
    ComplexMatrix::Storage out(na * nb, na * nb);
    for (Eigen::Index i = 0; i < na; ++i)
        for (Eigen::Index j = 0; j < na; ++j) out.block(i * nb, j * nb, nb, nb) = a.eigen()(i, j) * b.eigen();
    return ComplexMatrix(std::move(out));
}

/// Left fold of kron over a non-empty list.
inline ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
    if (factors.empty()) throw DimensionError("kron_all: no factors");
    ComplexMatrix out = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
    return out;
}

/// Traces out every subsystem not listed in `keep` (0-based). Kept subsystems
/// appear in ascending order. An empty `keep` traces everything and returns
/// the 1x1 matrix holding tr(rho).
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const std::size_t> dims,
                                   std::span<const std::size_t> keep) {
    if (dims.empty()) throw DimensionError("partial_trace: no subsystems");
    std::size_t total = 1;
    for (auto d : dims) {
        if (d == 0) throw DimensionError("partial_trace: zero subsystem dimension");
        total *= d;
    }
    if (total != rho.dim())
        throw DimensionError("partial_trace: subsystem dimensions multiply to " + std::to_string(total) +
                             " but matrix has dimension " + std::to_string(rho.dim()));

    std::vector<bool> kept(dims.size(), false);
    for (auto k : keep) {
        if (k >= dims.size()) throw DimensionError("partial_trace: keep index out of range");
        if (kept[k]) throw DimensionError("partial_trace: duplicate keep index");
        kept[k] = true;
    }

    const std::size_t n = dims.size();
    // Row-major strides of the full space; the last subsystem varies fastest.
    std::vector<std::size_t> stride(n, 1);
    for (std::size_t k = n - 1; k-- > 0;) stride[k] = stride[k + 1] * dims[k + 1];

    std::size_t out_dim = 1;
    std::vector<std::size_t> out_stride(n, 0);
    for (std::size_t k = n; k-- > 0;) {
        if (!kept[k]) continue;
        out_stride[k] = out_dim;
        out_dim *= dims[k];
    }

    auto reduced_index = [&](std::size_t full) {
        std::size_t r = 0;
        for (std::size_t k = 0; k < n; ++k) r += ((full / stride[k]) % dims[k]) * out_stride[k];
        return r;
    };
    auto traced_part_equal = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < n; ++k)
            if (!kept[k] && (i / stride[k]) % dims[k] != (j / stride[k]) % dims[k]) return false;
        return true;
    };

    ComplexMatrix out(out_dim);
    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t j = 0; j < total; ++j)
            if (traced_part_equal(i, j)) out(reduced_index(i), reduced_index(j)) += rho(i, j);
    return out;
}

inline ComplexMatrix partial_trace(const ComplexMatrix& rho, std::initializer_list<std::size_t> dims,
                                   std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span<const std::size_t>(dims.begin(), dims.size()),
                         std::span<const std::size_t>(keep.begin(), keep.size()));
}

struct HermitianEigensystem {
    std::vector<double> values;     // descending
    ComplexMatrix::Storage vectors; // column k belongs to values[k]
};

inline HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m) {
    if (!is_hermitian(m))
        throw DomainError("hermitian_eigenvalues: matrix is not Hermitian within " + std::to_string(kHermitianTol));
    // Symmetrize so round-off in the strictly-lower triangle is not silently dropped.
    const ComplexMatrix::Storage h = 0.5 * (m.eigen() + m.eigen().adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix::Storage> solver(h);
    if (solver.info() != Eigen::Success) throw DomainError("hermitian_eigenvalues: solver did not converge");

    const auto n = h.rows();
    HermitianEigensystem out;
    out.values.resize(static_cast<std::size_t>(n));
    out.vectors.resize(n, n);
    // Eigen returns ascending order.
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[static_cast<std::size_t>(k)] = solver.eigenvalues()(n - 1 - k);
        out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return out;
}

/// Real eigenvalues of a Hermitian matrix, largest first.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) { return hermitian_eigensystem(m).values; }

inline bool is_psd(const ComplexMatrix& m, double tol = kHermitianTol) {
    if (!is_hermitian(m, tol)) return false;
    return hermitian_eigenvalues(m).back() >= -tol;
}

// Pauli matrices.
inline ComplexMatrix pauli_i() { return ComplexMatrix::identity(2); }
inline ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix pauli_y() { return {{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}}; }
inline ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

/// sigma_0 .. sigma_3 = I, X, Y, Z.
inline ComplexMatrix pauli(int index) {
    switch (index) {
    case 0: return pauli_i();
    case 1: return pauli_x();
    case 2: return pauli_y();
    case 3: return pauli_z();
    default: throw DomainError("pauli: index must be 0..3");
    }
}

/// Real part of tr(rho * op) after checking the imaginary residue is below `tol`.
inline double real_expectation(const ComplexMatrix& rho, const ComplexMatrix& op, double tol = kHermitianTol) {
    const cplx v = (rho.eigen().cwiseProduct(op.eigen().transpose())).sum();
    if (std::abs(v.imag()) > tol) throw DomainError("expectation value has imaginary part " + std::to_string(v.imag()));
    return v.real();
}

} // namespace wbell

#endif // WBELL_LINALG_HPP
