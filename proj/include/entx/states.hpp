#pragma once

#include <entx/linalg.hpp>

#include <utility>

namespace entx {

/// Bipartite pure state, amplitudes indexed a*dB + b.
struct PureState {
    std::size_t dA = 0;
    std::size_t dB = 0;
    ComplexVector amplitudes;

    PureState(std::size_t da, std::size_t db, ComplexVector amps, double norm_tol = 1e-9)
        : dA(da), dB(db), amplitudes(std::move(amps)) {
        if (dA == 0 || dB == 0 || amplitudes.size() != dA * dB) {
            throw shape_error("pure state amplitude length must equal dA*dB");
        }
        const double n = vec_norm(amplitudes);
        if (std::abs(n - 1.0) > norm_tol) {
            throw input_error("pure state is not unit norm within tolerance");
        }
    }

    std::size_t dim() const { return dA * dB; }

    ComplexMatrix projector() const { return outer(amplitudes, amplitudes); }
};

/// Hermitian, PSD, unit-trace operator on a bipartite space.
struct DensityMatrix {
    std::size_t dA = 0;
    std::size_t dB = 0;
    ComplexMatrix matrix;

    DensityMatrix(std::size_t da, std::size_t db, ComplexMatrix m, double tol = 1e-9)
        : dA(da), dB(db), matrix(std::move(m)) {
        const std::size_t d = dA * dB;
        if (matrix.rows != d || matrix.cols != d) {
            throw shape_error("density matrix dimension must equal dA*dB");
        }
        if (frobenius_norm(matrix - matrix.adjoint()) > tol) {
            throw input_error("density matrix is not Hermitian within tolerance");
        }
        cplx tr{};
        for (std::size_t i = 0; i < d; ++i) {
            tr += matrix(i, i);
        }
        if (std::abs(tr - cplx(1.0)) > tol) {
            throw input_error("density matrix trace is not 1 within tolerance");
        }
        const auto eig = hermitian_eig(matrix, tol);
        if (eig.values.front() < -tol) {
            throw input_error("density matrix has a negative eigenvalue beyond tolerance");
        }
    }

    struct unchecked_t {};
    DensityMatrix(unchecked_t, std::size_t da, std::size_t db, ComplexMatrix m)
        : dA(da), dB(db), matrix(std::move(m)) {}
};

struct SchmidtDecomposition {
    std::vector<double> coefficients;  // ascending sqrt(mu_i), length min(dA,dB)
    ComplexMatrix basis_a;             // columns |a_i>
    ComplexMatrix basis_b;             // columns |b_i>
};

/// Ascending squared Schmidt coefficients.
struct SchmidtVector {
    std::vector<double> entries;
};

struct PureStateEnsemble {
    std::vector<std::pair<double, PureState>> elements;

    PureStateEnsemble(std::vector<std::pair<double, PureState>> elems, double tol = 1e-9)
        : elements(std::move(elems)) {
        if (elements.empty()) {
            throw input_error("ensemble must be non-empty");
        }
        double total = 0;
        for (const auto& [p, st] : elements) {
            if (p < -tol) {
                throw input_error("ensemble probability is negative");
            }
            if (st.dA != elements.front().second.dA || st.dB != elements.front().second.dB) {
                throw shape_error("ensemble states must share dimensions");
            }
            total += p;
        }
        if (std::abs(total - 1.0) > tol) {
            throw input_error("ensemble probabilities do not sum to 1");
        }
    }

    std::size_t dA() const { return elements.front().second.dA; }
    std::size_t dB() const { return elements.front().second.dB; }
};

inline SchmidtDecomposition schmidt_decompose(const PureState& psi, double tol = 1e-9) {
    const std::size_t m = std::min(psi.dA, psi.dB);
    const bool a_small = psi.dA <= psi.dB;
    const ComplexMatrix proj = psi.projector();
    const ComplexMatrix red =
        partial_trace(proj, psi.dA, psi.dB, a_small ? Subsystem::A : Subsystem::B);
    const EigResult eig = hermitian_eig(red, tol);

    SchmidtDecomposition out;
    out.coefficients.resize(m);
    const std::size_t other = a_small ? psi.dB : psi.dA;
    ComplexMatrix small_basis(m, m);
    ComplexMatrix partner(other, m);

    for (std::size_t i = 0; i < m; ++i) {
        const double mu = std::max(0.0, eig.values[i]);
        out.coefficients[i] = std::sqrt(mu);
        for (std::size_t k = 0; k < m; ++k) {
            small_basis(k, i) = eig.vectors(k, i);
        }
    }

    // partner vectors: <a_i| (x) I |psi> / c_i on the large side; zero-coefficient
    // slots are filled with an orthonormal completion
    for (std::size_t i = 0; i < m; ++i) {
        const double c = out.coefficients[i];
        ComplexVector v(other, cplx{});
        if (c > 1e-12) {
            if (a_small) {
                for (std::size_t b = 0; b < other; ++b) {
                    cplx s{};
                    for (std::size_t a = 0; a < m; ++a) {
                        s += std::conj(small_basis(a, i)) * psi.amplitudes[a * psi.dB + b];
                    }
                    v[b] = s / c;
                }
            } else {
                for (std::size_t a = 0; a < other; ++a) {
                    cplx s{};
                    for (std::size_t b = 0; b < m; ++b) {
                        s += std::conj(small_basis(b, i)) * psi.amplitudes[a * psi.dB + b];
                    }
                    v[a] = s / c;
                }
            }
            const double n = vec_norm(v);
            for (auto& z : v) {
                z /= n;
            }
        }
        for (std::size_t k = 0; k < other; ++k) {
            partner(k, i) = v[k];
        }
    }
    // Gram-Schmidt completion for zero-coefficient columns
    for (std::size_t i = 0; i < m; ++i) {
        if (out.coefficients[i] > 1e-12) {
            continue;
        }
        for (std::size_t cand = 0; cand < other; ++cand) {
            ComplexVector v(other, cplx{});
            v[cand] = 1.0;
            for (std::size_t j = 0; j < m; ++j) {
                if (j == i) {
                    continue;
                }
                cplx proj_ij{};
                for (std::size_t k = 0; k < other; ++k) {
                    proj_ij += std::conj(partner(k, j)) * v[k];
                }
                for (std::size_t k = 0; k < other; ++k) {
                    v[k] -= proj_ij * partner(k, j);
                }
            }
            const double n = vec_norm(v);
            if (n > 0.5) {
                for (std::size_t k = 0; k < other; ++k) {
                    partner(k, i) = v[k] / n;
                }
                break;
            }
        }
    }

    if (a_small) {
        out.basis_a = std::move(small_basis);
        out.basis_b = std::move(partner);
    } else {
        out.basis_a = std::move(partner);
        out.basis_b = std::move(small_basis);
    }
    return out;
}

inline SchmidtVector schmidt_vector(const PureState& psi, double tol = 1e-9) {
    const auto dec = schmidt_decompose(psi, tol);
    SchmidtVector v;
    v.entries.reserve(dec.coefficients.size());
    for (double c : dec.coefficients) {
        v.entries.push_back(c * c);
    }
    return v;
}

inline int schmidt_rank(const PureState& psi, double tol = 1e-10) {
    const auto v = schmidt_vector(psi);
    int r = 0;
    for (double mu : v.entries) {
        if (mu > tol) {
            ++r;
        }
    }
    return r;
}

inline DensityMatrix density_from_ensemble(const PureStateEnsemble& d) {
    const std::size_t dim = d.dA() * d.dB();
    ComplexMatrix m(dim, dim);
    for (const auto& [p, st] : d.elements) {
        const auto& v = st.amplitudes;
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                m(i, j) += p * v[i] * std::conj(v[j]);
            }
        }
    }
    return DensityMatrix(d.dA(), d.dB(), std::move(m));
}

/// Eigen-ensemble of rho: (eigenvalue, eigenvector) pairs above tol, probabilities
/// descending.
inline PureStateEnsemble spectral_ensemble(const DensityMatrix& rho, double tol = 1e-10) {
    const EigResult eig = hermitian_eig(rho.matrix);
    std::vector<std::pair<double, PureState>> elems;
    const std::size_t n = eig.values.size();
    for (std::size_t idx = n; idx-- > 0;) {
        const double p = eig.values[idx];
        if (p <= tol) {
            break;
        }
        ComplexVector v(n);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = eig.vectors(i, idx);
        }
        elems.emplace_back(p, PureState(rho.dA, rho.dB, std::move(v)));
    }
    return PureStateEnsemble(std::move(elems));
}

/// Ensemble mixing per sqrt(q_i)|e_i> = sum_j U_ij sqrt(p_j)|phi_j>; elements
/// with weight <= 1e-12 are dropped.
inline PureStateEnsemble mix_ensemble(const PureStateEnsemble& d, const ComplexMatrix& u,
                                      double tol = 1e-9) {
    const std::size_t k = d.elements.size();
    if (u.rows != k || u.cols != k) {
        throw shape_error("mixing unitary size must match ensemble size");
    }
    if (frobenius_norm(u.adjoint() * u - ComplexMatrix::identity(k)) > tol * std::sqrt(double(k))) {
        throw input_error("mixing matrix is not unitary within tolerance");
    }
    const std::size_t dim = d.dA() * d.dB();
    std::vector<std::pair<double, PureState>> elems;
    for (std::size_t i = 0; i < k; ++i) {
        ComplexVector w(dim, cplx{});
        for (std::size_t j = 0; j < k; ++j) {
            const cplx coef = u(i, j) * std::sqrt(d.elements[j].first);
            const auto& amps = d.elements[j].second.amplitudes;
            for (std::size_t x = 0; x < dim; ++x) {
                w[x] += coef * amps[x];
            }
        }
        const double n = vec_norm(w);
        const double q = n * n;
        if (q <= 1e-12) {
            continue;
        }
        for (auto& z : w) {
            z /= n;
        }
        elems.emplace_back(q, PureState(d.dA(), d.dB(), std::move(w)));
    }
    return PureStateEnsemble(std::move(elems));
}

/// Normalized random superposition of the ensemble members, coefficients uniform
/// on the complex unit sphere. Deterministic per seed.
inline PureState random_support_state(const PureStateEnsemble& d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t dim = d.dA() * d.dB();
    ComplexVector w(dim, cplx{});
    for (const auto& [p, st] : d.elements) {
        const cplx c(gauss(rng), gauss(rng));
        for (std::size_t x = 0; x < dim; ++x) {
            w[x] += c * st.amplitudes[x];
        }
    }
    const double n = vec_norm(w);
    if (n == 0) {
        throw input_error("random support state degenerated to zero");
    }
    for (auto& z : w) {
        z /= n;
    }
    return PureState(d.dA(), d.dB(), std::move(w));
}

/// States equal up to a global phase: |<psi1|psi2>| >= 1 - tol.
inline bool equal_up_to_phase(const PureState& a, const PureState& b, double tol = 1e-8) {
    if (a.dA != b.dA || a.dB != b.dB) {
        return false;
    }
    return std::abs(inner(a.amplitudes, b.amplitudes)) >= 1.0 - tol;
}

}  // namespace entx
