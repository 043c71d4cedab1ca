#pragma once

#include <entx/channels.hpp>
#include <entx/majorization.hpp>

#include <limits>
#include <map>
#include <tuple>

namespace entx::gallery {

// mu*(1+nu^2) = 1, which is what normalizes the target state
inline const double kMu = 15.0 / 16.0;
inline const double kNu = 1.0 / std::sqrt(15.0);

/// Signed basis labels {0..r, -3..-r} onto indices of the (2r-1)-dimensional
/// local space: non-negative labels map to themselves, -k maps to r-2+k.
/// The sigma-side space is (2r+1)-dimensional with the identity map on 0..2r.
struct LabelMap {
    int r;

    explicit LabelMap(int r_) : r(r_) {
        if (r < 3) {
            throw input_error("gallery constructions require r >= 3");
        }
    }

    std::size_t rho_dim() const { return 2 * r - 1; }
    std::size_t sigma_dim() const { return 2 * r + 1; }

    std::size_t rho_index(int label) const {
        if (label >= 0 && label <= r) {
            return static_cast<std::size_t>(label);
        }
        if (label <= -3 && label >= -r) {
            return static_cast<std::size_t>(r - 2 - label);
        }
        throw input_error("label outside the rho-side range");
    }

    std::size_t sigma_index(int label) const {
        if (label < 0 || label > 2 * r) {
            throw input_error("label outside the sigma-side range");
        }
        return static_cast<std::size_t>(label);
    }
};

enum class StateKind { Phi1, Phi2, Phi, PhiR };
enum class MixedKind { Rho, Sigma };
enum class Encoding { Literal, Corrected };

inline const char* to_string(Encoding e) {
    return e == Encoding::Literal ? "literal" : "corrected";
}

namespace detail {

inline PureState build_state(std::size_t dim, const std::vector<std::tuple<double, std::size_t,
                                                                           std::size_t>>& terms) {
    ComplexVector v(dim * dim, cplx{});
    for (const auto& [coef, a, b] : terms) {
        v[a * dim + b] = coef;
    }
    return PureState(dim, dim, std::move(v));
}

}  // namespace detail

/// The counterexample states. phi1, phi2 and phi live in the (2r-1) (x) (2r-1)
/// space; phi_r lives in the (2r+1) (x) (2r+1) space.
inline PureState make_state(StateKind kind, int r) {
    const LabelMap lm(r);
    std::vector<std::tuple<double, std::size_t, std::size_t>> terms;
    switch (kind) {
        case StateKind::Phi1: {
            const double c = 1.0 / std::sqrt(double(r));
            terms.emplace_back(c, lm.rho_index(0), lm.rho_index(1));
            terms.emplace_back(c, lm.rho_index(1), lm.rho_index(0));
            for (int j = 3; j <= r; ++j) {
                terms.emplace_back(c, lm.rho_index(j), lm.rho_index(j));
            }
            return detail::build_state(lm.rho_dim(), terms);
        }
        case StateKind::Phi2: {
            const double c = 1.0 / std::sqrt(double(r));
            terms.emplace_back(c, lm.rho_index(0), lm.rho_index(2));
            terms.emplace_back(c, lm.rho_index(2), lm.rho_index(0));
            for (int j = 3; j <= r; ++j) {
                terms.emplace_back(c, lm.rho_index(-j), lm.rho_index(-j));
            }
            return detail::build_state(lm.rho_dim(), terms);
        }
        case StateKind::Phi: {
            const double s = std::sqrt(2.0 / r);
            terms.emplace_back(s * std::sqrt(kMu) * kNu, lm.rho_index(0), lm.rho_index(0));
            terms.emplace_back(s * std::sqrt(kMu), lm.rho_index(1), lm.rho_index(1));
            for (int j = 3; j <= r; ++j) {
                terms.emplace_back(s / std::sqrt(2.0), lm.rho_index(j), lm.rho_index(j));
            }
            return detail::build_state(lm.rho_dim(), terms);
        }
        case StateKind::PhiR: {
            const double s = std::sqrt(2.0 / r);
            terms.emplace_back(s * std::sqrt(kMu) * kNu, lm.sigma_index(r), lm.sigma_index(r));
            terms.emplace_back(s * std::sqrt(kMu), lm.sigma_index(r + 1), lm.sigma_index(r + 1));
            for (int j = 3; j <= r; ++j) {
                terms.emplace_back(s / std::sqrt(2.0), lm.sigma_index(r + j),
                                   lm.sigma_index(r + j));
            }
            return detail::build_state(lm.sigma_dim(), terms);
        }
    }
    throw input_error("unknown state kind");
}

/// rho(p) = p phi1 + (1-p) phi2; sigma(q) = q phi + (1-q) phi_r, with phi
/// embedded in the (2r+1)-dimensional sigma space.
inline DensityMatrix make_mixed(MixedKind kind, int r, double weight) {
    if (weight < 0.0 || weight > 1.0) {
        throw input_error("mixture weight must lie in [0,1]");
    }
    const LabelMap lm(r);
    if (kind == MixedKind::Rho) {
        const PureState phi1 = make_state(StateKind::Phi1, r);
        const PureState phi2 = make_state(StateKind::Phi2, r);
        ComplexMatrix m =
            cplx(weight) * phi1.projector() + cplx(1.0 - weight) * phi2.projector();
        return DensityMatrix(lm.rho_dim(), lm.rho_dim(), std::move(m));
    }
    const std::size_t d = lm.sigma_dim();
    const PureState phi_small = make_state(StateKind::Phi, r);
    ComplexVector phi_emb(d * d, cplx{});
    const std::size_t ds = lm.rho_dim();
    for (std::size_t a = 0; a < ds; ++a) {
        for (std::size_t b = 0; b < ds; ++b) {
            phi_emb[a * d + b] = phi_small.amplitudes[a * ds + b];
        }
    }
    const PureState phi(d, d, std::move(phi_emb));
    const PureState phi_r = make_state(StateKind::PhiR, r);
    ComplexMatrix m = cplx(weight) * phi.projector() + cplx(1.0 - weight) * phi_r.projector();
    return DensityMatrix(d, d, std::move(m));
}

namespace detail {

struct Term {
    double coef;
    int out;
    int in;
};

inline ComplexMatrix factor(const LabelMap& lm, const std::vector<Term>& terms) {
    const std::size_t d = lm.rho_dim();
    ComplexMatrix m(d, d);
    for (const auto& t : terms) {
        m(lm.rho_index(t.out), lm.rho_index(t.in)) += t.coef;
    }
    return m;
}

}  // namespace detail

/// The 17-operator separable channel mapping rho(p) onto phi. `literal`
/// transcribes the printed index ranges verbatim (and is defective); `corrected`
/// replaces the positive-j sums in K3's B factor and both factors of K4 with
/// sums over the negative labels, mirroring K1/K2 under label negation.
inline SeparableChannel make_appendix_channel(int r, Encoding encoding) {
    using detail::Term;
    const LabelMap lm(r);
    const double root_mu = std::sqrt(kMu);
    const double root_munu = std::sqrt(kMu * kNu);
    const double root_nu = std::sqrt(kNu);
    const double q = std::pow(2.0, -0.25);
    const double c5 = std::sqrt(1.0 - 2.0 * kMu * kNu);
    const double c7 = std::sqrt(1.0 - 4.0 * kMu * kNu);
    const double c14 = std::sqrt(1.0 - (kMu * kNu + kMu) / std::sqrt(2.0));
    const double c15 = std::sqrt(1.0 - (kNu + 1.0) / std::sqrt(2.0));
    const bool corrected = encoding == Encoding::Corrected;

    auto diag_pos = [&](double c) {
        std::vector<Term> t;
        for (int j = 3; j <= r; ++j) {
            t.push_back({c, j, j});
        }
        return t;
    };
    auto diag_neg = [&](double c) {
        std::vector<Term> t;
        for (int j = 3; j <= r; ++j) {
            t.push_back({c, -j, -j});
        }
        return t;
    };
    auto flip_neg_to_pos = [&](double c) {
        // sum over j=-3..-r of |-j><j|
        std::vector<Term> t;
        for (int j = 3; j <= r; ++j) {
            t.push_back({c, j, -j});
        }
        return t;
    };
    auto flip_pos_to_neg = [&](double c) {
        // sum over j=3..r of |-j><j|
        std::vector<Term> t;
        for (int j = 3; j <= r; ++j) {
            t.push_back({c, -j, j});
        }
        return t;
    };
    auto cat = [](std::vector<Term> a, const std::vector<Term>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };

    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> ks;
    auto add = [&](const std::vector<Term>& a, const std::vector<Term>& b) {
        ks.emplace_back(detail::factor(lm, a), detail::factor(lm, b));
    };

    // K1, K2: act on phi1
    add(cat({{root_munu, 0, 0}, {root_mu, 1, 1}}, diag_pos(q)),
        cat({{root_nu, 0, 1}, {1.0, 1, 0}}, diag_pos(q)));
    add(cat({{root_mu, 1, 0}, {root_munu, 0, 1}}, diag_pos(q)),
        cat({{1.0, 1, 1}, {root_nu, 0, 0}}, diag_pos(q)));
    // K3, K4: act on phi2; the printed tail of K3's B factor and of both K4
    // factors sums over positive j, which annihilates phi2's negative labels
    add(cat({{root_munu, 0, 0}, {root_mu, 1, 2}}, flip_neg_to_pos(q)),
        cat({{root_nu, 0, 2}, {1.0, 1, 0}},
            corrected ? flip_neg_to_pos(q) : flip_pos_to_neg(q)));
    add(cat({{root_mu, 1, 0}, {root_munu, 0, 2}},
            corrected ? flip_neg_to_pos(q) : flip_pos_to_neg(q)),
        cat({{1.0, 1, 2}, {root_nu, 0, 0}},
            corrected ? flip_neg_to_pos(q) : flip_pos_to_neg(q)));
    // K5..K7: diagonal completion on labels 0, 1, 2
    add({{1.0, 1, 1}}, {{c5, 1, 1}, {1.0, 2, 2}});
    add({{1.0, 2, 2}}, {{c5, 2, 2}, {1.0, 1, 1}});
    add({{c7, 0, 0}}, {{1.0, 0, 0}});
    // K8..K13: cross terms between label blocks
    add(diag_pos(1.0), diag_neg(1.0));
    add(diag_neg(1.0), diag_pos(1.0));
    add(diag_pos(1.0), {{1.0, 2, 2}});
    add({{1.0, 2, 2}}, diag_pos(1.0));
    add(diag_neg(1.0), {{1.0, 1, 1}});
    add({{1.0, 1, 1}}, diag_neg(1.0));
    // K14..K17: weight completion on the {0,1}/{0,2} blocks
    add({{c14, 0, 0}, {c14, 1, 1}}, diag_pos(1.0));
    add(diag_pos(1.0), {{c15, 0, 0}, {c15, 1, 1}});
    add({{c14, 0, 0}, {c14, 2, 2}}, diag_neg(1.0));
    add(diag_neg(1.0), {{c15, 0, 0}, {c15, 2, 2}});

    const std::size_t d = lm.rho_dim();
    return SeparableChannel(d, d, d, d, std::move(ks), !corrected);
}

struct Check {
    std::string name;
    bool pass = false;
    std::vector<double> witnesses;
};

struct VerificationReport {
    std::map<std::string, std::string> params;
    std::vector<Check> checks;

    bool overall() const {
        for (const auto& c : checks) {
            if (!c.pass) {
                return false;
            }
        }
        return true;
    }
};

namespace detail {

inline std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
    return seed + index;
}

inline std::vector<double> padded_schmidt(const PureState& st, std::size_t n) {
    const auto v = schmidt_vector(st);
    std::vector<double> a(n, 0.0);
    std::copy(v.entries.begin(), v.entries.end(), a.begin() + (n - v.entries.size()));
    return a;
}

}  // namespace detail

/// Theorem 1 at desk scale: every ensemble element of rho converts to phi by
/// LOCC, the separable channel maps rho onto phi, yet the LOCC dimension
/// predicate fails for rho's space.
inline VerificationReport verify_theorem1(int r, double p, int samples, std::uint64_t seed) {
    if (samples < 1) {
        throw input_error("samples must be >= 1");
    }
    const PureState phi = make_state(StateKind::Phi, r);
    const DensityMatrix rho = make_mixed(MixedKind::Rho, r, p);
    const SeparableChannel ch = make_appendix_channel(r, Encoding::Corrected);

    VerificationReport rep;
    rep.params = {{"r", std::to_string(r)},
                  {"p", std::to_string(p)},
                  {"samples", std::to_string(samples)},
                  {"seed", std::to_string(seed)},
                  {"encoding", "corrected"}};

    rep.checks.push_back(Check{"channel is trace preserving (Frobenius defect)", ch.tp.ok,
                          {ch.tp.defect}});

    const DensityMatrix out = apply_channel(ch, rho);
    const double fid = fidelity_pure(out.matrix, phi.amplitudes);
    rep.checks.push_back(Check{"channel maps rho onto phi (fidelity)", fid >= 1.0 - 1e-9, {fid}});

    const PureStateEnsemble base = spectral_ensemble(rho);
    int min_rank = std::numeric_limits<int>::max();
    int failures = 0;
    for (int i = 0; i < samples; ++i) {
        const std::uint64_t s = detail::sample_seed(seed, i);
        const ComplexMatrix u = random_unitary(base.elements.size(), s);
        const PureStateEnsemble mixed = mix_ensemble(base, u);
        for (const auto& [q, el] : mixed.elements) {
            const int rk = schmidt_rank(el);
            min_rank = std::min(min_rank, rk);
            if (rk < r || !nielsen_convertible(el, phi)) {
                ++failures;
            }
        }
        const PureState support = random_support_state(base, s);
        const int rk = schmidt_rank(support);
        min_rank = std::min(min_rank, rk);
        if (rk < r || !nielsen_convertible(support, phi)) {
            ++failures;
        }
    }
    rep.checks.push_back(Check{"sampled ensemble elements and support states are LOCC-convertible "
                          "to phi with Schmidt rank >= r (min rank, failures)",
                          failures == 0, {double(min_rank), double(failures)}});

    const bool lemma1 = lemma1_dimension_check(2 * r - 1, 2 * r - 1, r);
    rep.checks.push_back(Check{"LOCC dimension predicate fails for rho -> phi", !lemma1,
                          {double(2 * r - 1), double(r)}});

    std::vector<PureState> basis;
    for (const auto& [q, st] : base.elements) {
        basis.push_back(st);
    }
    const auto prop = proportionality_matrix(ch, basis, phi);
    const bool ortho = coefficient_orthonormality(prop.c);
    rep.checks.push_back(Check{"branch coefficients are row-orthonormal (max residual)",
                          ortho && prop.max_residual <= 1e-9, {prop.max_residual}});
    return rep;
}

/// Theorem 2 at desk scale: ensemble-averaged E_l dominance for sampled
/// decompositions of rho against phi, equality of the E_l data of phi and
/// phi_r, and the failing LOCC dimension predicate.
inline VerificationReport verify_theorem2(int r, double p, double q, int samples,
                                          std::uint64_t seed) {
    if (samples < 1) {
        throw input_error("samples must be >= 1");
    }
    if (q < 0.0 || q > 1.0) {
        throw input_error("q must lie in [0,1]");
    }
    const LabelMap lm(r);
    const PureState phi = make_state(StateKind::Phi, r);
    const PureState phi_r = make_state(StateKind::PhiR, r);
    const DensityMatrix rho = make_mixed(MixedKind::Rho, r, p);

    VerificationReport rep;
    rep.params = {{"r", std::to_string(r)},
                  {"p", std::to_string(p)},
                  {"q", std::to_string(q)},
                  {"samples", std::to_string(samples)},
                  {"seed", std::to_string(seed)}};

    const std::size_t n = lm.sigma_dim();
    const auto phi_pad = detail::padded_schmidt(phi, n);

    const PureStateEnsemble base = spectral_ensemble(rho);
    double worst_margin = std::numeric_limits<double>::infinity();
    bool convertible_all = true;
    for (int i = 0; i < samples; ++i) {
        const ComplexMatrix u = random_unitary(base.elements.size(),
                                               detail::sample_seed(seed, i));
        const PureStateEnsemble mixed = mix_ensemble(base, u);
        std::vector<double> avg(n, 0.0);
        for (const auto& [w, el] : mixed.elements) {
            const auto pad = detail::padded_schmidt(el, n);
            for (std::size_t l = 0; l < n; ++l) {
                avg[l] += w * pad[l];
            }
            if (!nielsen_convertible(el, phi)) {
                convertible_all = false;
            }
        }
        double sum_avg = 0, sum_phi = 0;
        for (std::size_t l = 0; l < n; ++l) {
            sum_avg += avg[l];
            sum_phi += phi_pad[l];
            worst_margin = std::min(worst_margin, sum_avg - sum_phi);
        }
    }
    rep.checks.push_back(Check{"sampled ensembles dominate phi in every E_l (worst margin)",
                          worst_margin >= -1e-9, {worst_margin}});

    const auto phir_pad = detail::padded_schmidt(phi_r, n);
    double max_diff = 0, s1 = 0, s2 = 0;
    for (std::size_t l = 0; l < n; ++l) {
        s1 += phi_pad[l];
        s2 += phir_pad[l];
        max_diff = std::max(max_diff, std::abs(s1 - s2));
    }
    rep.checks.push_back(Check{"E_l(phi) equals E_l(phi_r) for all l (max difference); the "
                          "sigma-defining ensemble therefore carries the monotone data of phi",
                          max_diff <= 1e-12, {max_diff, q}});

    const bool lemma1 = lemma1_dimension_check(2 * r - 1, 2 * r - 1, r);
    rep.checks.push_back(Check{"LOCC dimension predicate fails for rho -> phi", !lemma1,
                          {double(2 * r - 1), double(r)}});

    rep.checks.push_back(Check{"every sampled element is Nielsen-convertible to phi; single-state "
                          "monotonicity extends the E_l dominance to every entanglement monotone",
                          convertible_all, {}});
    return rep;
}

/// Theorem 3 at desk scale: all four pairwise Nielsen convertibilities between
/// the initial and final ensemble members, ensemble E_l dominance on a (p,q)
/// grid, and the failing LOCC dimension predicate for the implied mixed-state
/// transformation.
inline VerificationReport verify_theorem3(int r) {
    const LabelMap lm(r);
    const PureState phi1 = make_state(StateKind::Phi1, r);
    const PureState phi2 = make_state(StateKind::Phi2, r);
    const PureState psi1 = make_state(StateKind::Phi, r);
    const PureState psi2 = make_state(StateKind::PhiR, r);

    VerificationReport rep;
    rep.params = {{"r", std::to_string(r)}};

    bool pairs_ok = true;
    for (const PureState* src : {&phi1, &phi2}) {
        for (const PureState* dst : {&psi1, &psi2}) {
            if (!nielsen_convertible(*src, *dst)) {
                pairs_ok = false;
            }
        }
    }
    rep.checks.push_back(Check{"all four initial states convert to both final states by LOCC",
                          pairs_ok, {}});

    const std::size_t n = lm.sigma_dim();
    const auto v1 = detail::padded_schmidt(phi1, n);
    const auto v2 = detail::padded_schmidt(phi2, n);
    const auto w1 = detail::padded_schmidt(psi1, n);
    const auto w2 = detail::padded_schmidt(psi2, n);
    double worst_margin = std::numeric_limits<double>::infinity();
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        for (double q : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            double lhs = 0, rhs = 0;
            for (std::size_t l = 0; l < n; ++l) {
                lhs += p * v1[l] + (1 - p) * v2[l];
                rhs += q * w1[l] + (1 - q) * w2[l];
                worst_margin = std::min(worst_margin, lhs - rhs);
            }
        }
    }
    rep.checks.push_back(Check{"ensemble-averaged E_l dominance on the (p,q) grid (worst margin)",
                          worst_margin >= -1e-10, {worst_margin}});

    const bool lemma1 = lemma1_dimension_check(2 * r - 1, 2 * r - 1, r);
    rep.checks.push_back(Check{"LOCC dimension predicate fails for the implied mixed-state "
                          "transformation",
                          !lemma1, {double(2 * r - 1), double(r)}});
    return rep;
}

}  // namespace entx::gallery
