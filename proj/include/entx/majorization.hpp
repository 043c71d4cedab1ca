#pragma once

#include <entx/states.hpp>

#include <functional>
#include <string>

namespace entx {

/// A symmetric concave function on the probability simplex; evaluated on
/// ascending Schmidt vectors it defines a pure-state entanglement monotone.
struct MonotoneSpec {
    std::string name;
    std::function<double(const std::vector<double>&)> f;
};

/// E_l: sum of the l+1 smallest squared Schmidt coefficients.
inline double vidal_monotone(const SchmidtVector& v, std::size_t l) {
    if (l >= v.entries.size()) {
        throw input_error("vidal_monotone index out of range");
    }
    double s = 0;
    for (std::size_t i = 0; i <= l; ++i) {
        s += v.entries[i];
    }
    return s;
}

inline MonotoneSpec vidal_spec(std::size_t l) {
    return MonotoneSpec{"E_" + std::to_string(l), [l](const std::vector<double>& v) {
                            std::vector<double> s = v;
                            std::sort(s.begin(), s.end());
                            double sum = 0;
                            for (std::size_t i = 0; i <= l && i < s.size(); ++i) {
                                sum += s[i];
                            }
                            return sum;
                        }};
}

inline MonotoneSpec entropy_spec() {
    return MonotoneSpec{"entropy", [](const std::vector<double>& v) {
                            double h = 0;
                            for (double p : v) {
                                if (p > 0) {
                                    h -= p * std::log2(p);
                                }
                            }
                            return h;
                        }};
}

namespace detail {
// zero-pad the shorter vector at the ascending front
inline std::pair<std::vector<double>, std::vector<double>> pad_pair(const SchmidtVector& x,
                                                                    const SchmidtVector& y) {
    const std::size_t n = std::max(x.entries.size(), y.entries.size());
    std::vector<double> a(n, 0.0), b(n, 0.0);
    std::copy(x.entries.begin(), x.entries.end(), a.begin() + (n - x.entries.size()));
    std::copy(y.entries.begin(), y.entries.end(), b.begin() + (n - y.entries.size()));
    return {std::move(a), std::move(b)};
}
}  // namespace detail

/// lambda_x precedes lambda_y: every ascending partial sum of x dominates y's.
inline bool convertible_order(const SchmidtVector& x, const SchmidtVector& y, double tol = 1e-9) {
    const auto [a, b] = detail::pad_pair(x, y);
    double sx = 0, sy = 0;
    for (std::size_t l = 0; l < a.size(); ++l) {
        sx += a[l];
        sy += b[l];
        if (sx < sy - tol) {
            return false;
        }
    }
    return true;
}

/// Deterministic LOCC convertibility psi1 -> psi2 (Nielsen).
inline bool nielsen_convertible(const PureState& psi1, const PureState& psi2, double tol = 1e-9) {
    return convertible_order(schmidt_vector(psi1), schmidt_vector(psi2), tol);
}

inline double monotone_value(const MonotoneSpec& m, const PureState& psi) {
    return m.f(schmidt_vector(psi).entries);
}

inline double ensemble_monotone(const MonotoneSpec& m, const PureStateEnsemble& d) {
    double s = 0;
    for (const auto& [p, st] : d.elements) {
        s += p * monotone_value(m, st);
    }
    return s;
}

/// Jonathan-Plenio condition for a GIVEN ensemble of the target:
/// sum_a p_a E_l(phi_a) <= E_l(psi) for all l.
inline bool jonathan_plenio_check(const PureState& psi, const PureStateEnsemble& d,
                                  double tol = 1e-9) {
    const SchmidtVector vpsi = schmidt_vector(psi);
    std::size_t n = vpsi.entries.size();
    std::vector<SchmidtVector> members;
    members.reserve(d.elements.size());
    for (const auto& [p, st] : d.elements) {
        members.push_back(schmidt_vector(st));
        n = std::max(n, members.back().entries.size());
    }
    auto padded = [n](const SchmidtVector& v) {
        std::vector<double> a(n, 0.0);
        std::copy(v.entries.begin(), v.entries.end(), a.begin() + (n - v.entries.size()));
        return a;
    };
    const auto target = padded(vpsi);
    std::vector<std::vector<double>> mv;
    for (const auto& v : members) {
        mv.push_back(padded(v));
    }
    double target_sum = 0;
    std::vector<double> member_sums(mv.size(), 0.0);
    for (std::size_t l = 0; l < n; ++l) {
        target_sum += target[l];
        double avg = 0;
        for (std::size_t j = 0; j < mv.size(); ++j) {
            member_sums[j] += mv[j][l];
            avg += d.elements[j].first * member_sums[j];
        }
        if (avg > target_sum + tol) {
            return false;
        }
    }
    return true;
}

}  // namespace entx
