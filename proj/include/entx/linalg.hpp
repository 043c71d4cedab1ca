#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace entx {

using cplx = std::complex<double>;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct shape_error : error {
    using error::error;
};
struct input_error : error {
    using error::error;
};
struct size_error : error {
    using error::error;
};
struct convergence_error : error {
    using error::error;
};

using ComplexVector = std::vector<cplx>;

/// Dense row-major complex matrix.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> data;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
    ComplexMatrix(std::size_t r, std::size_t c, std::vector<cplx> d)
        : rows(r), cols(c), data(std::move(d)) {
        if (data.size() != rows * cols) {
            throw shape_error("matrix entries do not match declared shape");
        }
    }

    cplx& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(cols, rows);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                m(j, i) = std::conj((*this)(i, j));
            }
        }
        return m;
    }

    bool finite() const {
        for (const auto& z : data) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                return false;
            }
        }
        return true;
    }
};

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols != b.rows) {
        throw shape_error("matrix product shape mismatch");
    }
    ComplexMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols; ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw shape_error("matrix sum shape mismatch");
    }
    ComplexMatrix c = a;
    for (std::size_t i = 0; i < c.data.size(); ++i) {
        c.data[i] += b.data[i];
    }
    return c;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw shape_error("matrix difference shape mismatch");
    }
    ComplexMatrix c = a;
    for (std::size_t i = 0; i < c.data.size(); ++i) {
        c.data[i] -= b.data[i];
    }
    return c;
}

inline ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
    ComplexMatrix c = a;
    for (auto& z : c.data) {
        z *= s;
    }
    return c;
}

inline ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v) {
    if (a.cols != v.size()) {
        throw shape_error("matrix-vector shape mismatch");
    }
    ComplexVector w(a.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        cplx s{};
        for (std::size_t j = 0; j < a.cols; ++j) {
            s += a(i, j) * v[j];
        }
        w[i] = s;
    }
    return w;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0;
    for (const auto& z : a.data) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

inline double vec_norm(const ComplexVector& v) {
    double s = 0;
    for (const auto& z : v) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

inline cplx inner(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) {
        throw shape_error("inner product dimension mismatch");
    }
    cplx s{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

inline ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b) {
    ComplexMatrix m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            m(i, j) = a[i] * std::conj(b[j]);
        }
    }
    return m;
}

inline constexpr std::size_t kKronEntryCap = 1000000;

/// Kronecker product, entry ((i1*b.rows+i2),(j1*b.cols+j2)) = a(i1,j1)*b(i2,j2).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                          std::size_t entry_cap = kKronEntryCap) {
    const std::size_t rows = a.rows * b.rows;
    const std::size_t cols = a.cols * b.cols;
    if (rows != 0 && cols > entry_cap / rows) {
        throw size_error("kron result exceeds entry cap");
    }
    ComplexMatrix c(rows, cols);
    for (std::size_t i1 = 0; i1 < a.rows; ++i1) {
        for (std::size_t j1 = 0; j1 < a.cols; ++j1) {
            const cplx aij = a(i1, j1);
            if (aij == cplx{}) {
                continue;
            }
            for (std::size_t i2 = 0; i2 < b.rows; ++i2) {
                for (std::size_t j2 = 0; j2 < b.cols; ++j2) {
                    c(i1 * b.rows + i2, j1 * b.cols + j2) = aij * b(i2, j2);
                }
            }
        }
    }
    return c;
}

struct EigResult {
    std::vector<double> values;   // ascending
    ComplexMatrix vectors;        // columns, same order as values
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Off-diagonal threshold 1e-14*||h||_F, capped at 100 sweeps.
inline EigResult hermitian_eig(const ComplexMatrix& h, double tol = 1e-9) {
    if (h.rows != h.cols) {
        throw shape_error("hermitian_eig requires a square matrix");
    }
    const std::size_t n = h.rows;
    if (frobenius_norm(h - h.adjoint()) > tol * std::max(1.0, frobenius_norm(h))) {
        throw input_error("matrix is not Hermitian within tolerance");
    }

    ComplexMatrix a = h;
    // symmetrize to kill the sub-tolerance skew part
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const cplx s = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = s;
            a(j, i) = std::conj(s);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double thresh = 1e-14 * std::max(1e-300, frobenius_norm(h));

    auto off_norm = [&]() {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                s += std::norm(a(i, j));
            }
        }
        return std::sqrt(2.0 * s);
    };

    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        if (off_norm() <= thresh) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= thresh / (n * n)) {
                    continue;
                }
                const cplx phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // J: J(p,p)=c, J(p,q)=s*phase, J(q,p)=-s*conj(phase), J(q,q)=c
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp - s * std::conj(phase) * akq;
                    a(k, q) = s * phase * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * std::conj(phase) * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * vkp - s * std::conj(phase) * vkq;
                    v(k, q) = s * phase * vkp + c * vkq;
                }
            }
        }
    }
    if (sweep == kMaxSweeps && off_norm() > thresh) {
        throw convergence_error("Jacobi eigensolver did not converge");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigResult res;
    res.values.resize(n);
    res.vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        res.values[j] = a(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) {
            res.vectors(i, j) = v(i, order[j]);
        }
    }
    return res;
}

enum class Subsystem { A, B };

/// Partial trace of a (dA*dB)x(dA*dB) operator over the discarded subsystem.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t dA, std::size_t dB,
                                   Subsystem keep) {
    const std::size_t d = dA * dB;
    if (rho.rows != d || rho.cols != d) {
        throw shape_error("partial_trace dimension mismatch");
    }
    if (keep == Subsystem::A) {
        ComplexMatrix out(dA, dA);
        for (std::size_t i = 0; i < dA; ++i) {
            for (std::size_t j = 0; j < dA; ++j) {
                cplx s{};
                for (std::size_t b = 0; b < dB; ++b) {
                    s += rho(i * dB + b, j * dB + b);
                }
                out(i, j) = s;
            }
        }
        return out;
    }
    ComplexMatrix out(dB, dB);
    for (std::size_t i = 0; i < dB; ++i) {
        for (std::size_t j = 0; j < dB; ++j) {
            cplx s{};
            for (std::size_t a = 0; a < dA; ++a) {
                s += rho(a * dB + i, a * dB + j);
            }
            out(i, j) = s;
        }
    }
    return out;
}

/// real(<psi|rho|psi>) for unit psi.
inline double fidelity_pure(const ComplexMatrix& rho, const ComplexVector& psi,
                            double norm_tol = 1e-9) {
    if (rho.rows != rho.cols || rho.rows != psi.size()) {
        throw shape_error("fidelity_pure dimension mismatch");
    }
    if (std::abs(vec_norm(psi) - 1.0) > norm_tol) {
        throw input_error("fidelity_pure requires a unit-norm state");
    }
    return inner(psi, rho * psi).real();
}

/// Haar-random unitary: i.i.d. complex Gaussian matrix orthonormalized column
/// by column with modified Gram-Schmidt (norm division keeps the R diagonal
/// positive real). Deterministic per (n, seed).
inline ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw input_error("random_unitary requires n >= 1");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(n, n);
    for (auto& z : g.data) {
        z = cplx(gauss(rng), gauss(rng));
    }
    // two MGS passes for orthogonality near machine precision
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                cplx proj{};
                for (std::size_t i = 0; i < n; ++i) {
                    proj += std::conj(g(i, k)) * g(i, j);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    g(i, j) -= proj * g(i, k);
                }
            }
        }
        double nrm = 0;
        for (std::size_t i = 0; i < n; ++i) {
            nrm += std::norm(g(i, j));
        }
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < n; ++i) {
            g(i, j) /= nrm;
        }
    }
    return g;
}

}  // namespace entx
