#pragma once

#include <entx/states.hpp>

namespace entx {

struct TracePreservation {
    bool ok = false;
    double defect = 0;
};

/// Finite list of product Kraus pairs (K_A, K_B). The trace-preservation
/// defect is computed on construction; defective channels are admitted only
/// with the explicit `unchecked` flag.
struct SeparableChannel {
    std::size_t dA_in = 0, dB_in = 0;
    std::size_t dA_out = 0, dB_out = 0;
    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> kraus;
    bool unchecked = false;
    TracePreservation tp;

    SeparableChannel(std::size_t da_in, std::size_t db_in, std::size_t da_out,
                     std::size_t db_out, std::vector<std::pair<ComplexMatrix, ComplexMatrix>> ks,
                     bool allow_unchecked = false)
        : dA_in(da_in), dB_in(db_in), dA_out(da_out), dB_out(db_out), kraus(std::move(ks)),
          unchecked(allow_unchecked) {
        if (kraus.empty()) {
            throw input_error("channel needs at least one Kraus pair");
        }
        for (const auto& [ka, kb] : kraus) {
            if (ka.rows != dA_out || ka.cols != dA_in || kb.rows != dB_out ||
                kb.cols != dB_in) {
                throw shape_error("Kraus factor shape does not match declared dimensions");
            }
        }
        tp = compute_trace_preservation();
        if (!tp.ok && !unchecked) {
            throw input_error("channel is not trace preserving; pass unchecked to admit it");
        }
    }

  private:
    TracePreservation compute_trace_preservation() const {
        const std::size_t d = dA_in * dB_in;
        ComplexMatrix sum(d, d);
        for (const auto& [ka, kb] : kraus) {
            sum = sum + kron(ka.adjoint() * ka, kb.adjoint() * kb);
        }
        TracePreservation r;
        r.defect = frobenius_norm(sum - ComplexMatrix::identity(d));
        r.ok = r.defect <= 1e-10 * std::sqrt(double(d));
        return r;
    }
};

/// Frobenius defect of sum_n K_A^dag K_A (x) K_B^dag K_B against the identity.
inline TracePreservation validate_trace_preserving(const SeparableChannel& ch) {
    return ch.tp;
}

/// sum_n (K_A (x) K_B) rho (K_A (x) K_B)^dag.
inline DensityMatrix apply_channel(const SeparableChannel& ch, const DensityMatrix& rho) {
    if (rho.dA != ch.dA_in || rho.dB != ch.dB_in) {
        throw shape_error("channel input dimensions do not match state");
    }
    if (!ch.tp.ok && !ch.unchecked) {
        throw input_error("refusing to apply a defective channel without the unchecked flag");
    }
    const std::size_t d_out = ch.dA_out * ch.dB_out;
    ComplexMatrix out(d_out, d_out);
    for (const auto& [ka, kb] : ch.kraus) {
        const ComplexMatrix k = kron(ka, kb);
        out = out + k * rho.matrix * k.adjoint();
    }
    if (ch.tp.ok) {
        return DensityMatrix(ch.dA_out, ch.dB_out, std::move(out));
    }
    return DensityMatrix(DensityMatrix::unchecked_t{}, ch.dA_out, ch.dB_out, std::move(out));
}

/// Unnormalized branch outputs (K_A (x) K_B)|psi>, one per Kraus pair.
inline std::vector<ComplexVector> branch_vectors(const SeparableChannel& ch,
                                                 const PureState& psi) {
    if (psi.dA != ch.dA_in || psi.dB != ch.dB_in) {
        throw shape_error("channel input dimensions do not match state");
    }
    std::vector<ComplexVector> out;
    out.reserve(ch.kraus.size());
    for (const auto& [ka, kb] : ch.kraus) {
        out.push_back(kron(ka, kb) * psi.amplitudes);
    }
    return out;
}

/// c_j^n with rows indexed by ensemble element, columns by Kraus index.
struct CoefficientMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> data;

    cplx& operator()(std::size_t j, std::size_t n) { return data[j * cols + n]; }
    const cplx& operator()(std::size_t j, std::size_t n) const { return data[j * cols + n]; }
};

struct ProportionalityResult {
    CoefficientMatrix c;
    double max_residual = 0;
};

/// Branch proportionality onto a target: c_j^n = <target|(K_A (x) K_B)|phi_j>,
/// residual is the worst distance of a branch image from c_j^n|target>.
inline ProportionalityResult proportionality_matrix(const SeparableChannel& ch,
                                                    const std::vector<PureState>& basis,
                                                    const PureState& target) {
    if (target.dA != ch.dA_out || target.dB != ch.dB_out) {
        throw shape_error("target dimensions do not match channel output");
    }
    ProportionalityResult res;
    res.c.rows = basis.size();
    res.c.cols = ch.kraus.size();
    res.c.data.resize(res.c.rows * res.c.cols);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const auto branches = branch_vectors(ch, basis[j]);
        for (std::size_t n = 0; n < branches.size(); ++n) {
            const cplx c = inner(target.amplitudes, branches[n]);
            res.c(j, n) = c;
            ComplexVector diff = branches[n];
            for (std::size_t x = 0; x < diff.size(); ++x) {
                diff[x] -= c * target.amplitudes[x];
            }
            res.max_residual = std::max(res.max_residual, vec_norm(diff));
        }
    }
    return res;
}

/// Appendix-style row orthonormality: Gram matrix of the rows equals identity.
inline bool coefficient_orthonormality(const CoefficientMatrix& c, double tol = 1e-10) {
    for (std::size_t j = 0; j < c.rows; ++j) {
        for (std::size_t k = 0; k < c.rows; ++k) {
            cplx g{};
            for (std::size_t n = 0; n < c.cols; ++n) {
                g += std::conj(c(k, n)) * c(j, n);
            }
            const cplx expect = (j == k) ? cplx(1.0) : cplx(0.0);
            if (std::abs(g - expect) > tol) {
                return false;
            }
        }
    }
    return true;
}

/// Necessary dimension condition for a deterministic LOCC map from an MxN mixed
/// state onto a rank-r pure state: max(M,N) >= 2r and min(M,N) >= r.
inline bool lemma1_dimension_check(int m, int n, int r) {
    if (m < 1 || n < 1 || r < 1) {
        throw input_error("dimensions and rank must be positive");
    }
    return std::max(m, n) >= 2 * r && std::min(m, n) >= r;
}

}  // namespace entx
