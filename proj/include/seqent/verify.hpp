#pragma once

// Randomized property suite: every inequality and identity the library
// relies on, checked over a seeded ensemble of states and observables.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "commands.hpp"
#include "entropy.hpp"
#include "hermitian.hpp"
#include "optimizer.hpp"
#include "spin_half.hpp"
#include "state.hpp"

namespace seqent::verify {

struct Instance {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    long dim = 0;
    DensityOperator rho;
    HermitianObservable a;
    HermitianObservable b;
    HermitianObservable c;

    std::string describe() const {
        std::ostringstream os;
        os << "instance " << index << " (seed " << seed << ", dim " << dim << ", A outcomes "
           << a.outcome_count() << ", B outcomes " << b.outcome_count() << ")";
        return os.str();
    }
};

/// Instance k: pure state for even k, mixed for odd; every fourth A has a repeated eigenvalue.
inline Instance make_instance(std::size_t index, std::uint64_t seed, long dim) {
    std::mt19937_64 rng(seed);
    const auto s_rho = rng(), s_a = rng(), s_b = rng(), s_c = rng();
    DensityOperator rho = index % 2 == 0 ? random_state(dim, s_rho) : random_mixed_state(dim, s_rho);
    auto a = [&] {
        if (index % 4 != 3) return random_observable(dim, s_a);
        std::vector<double> spectrum(static_cast<std::size_t>(dim));
        for (long i = 0; i < dim; ++i) spectrum[static_cast<std::size_t>(i)] = static_cast<double>(std::max(0L, i - 1));
        return random_observable_with_spectrum(spectrum, s_a);
    }();
    return {index, seed, dim, std::move(rho), std::move(a), random_observable(dim, s_b),
            random_observable(dim, s_c)};
}

inline std::vector<Instance> make_ensemble(std::size_t count, long dim_lo, long dim_hi, std::uint64_t seed) {
    std::mt19937_64 master(seed);
    std::vector<Instance> out;
    out.reserve(count);
    const auto span = static_cast<std::size_t>(dim_hi - dim_lo + 1);
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(make_instance(k, master(), dim_lo + static_cast<long>(k % span)));
    }
    return out;
}

/// Outcome of one property: number of checks, smallest margin, first counterexample.
struct PropertyResult {
    std::string name;
    std::size_t checks = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::vector<std::string> counterexamples;

    bool passed() const { return counterexamples.empty(); }

    // lhs ≥ rhs − slack
    void at_least(double lhs, double rhs, double slack, const std::string& where) {
        record(lhs - rhs + slack, where, lhs, ">=", rhs);
    }
    // |value| ≤ tol
    void small(double value, double tol, const std::string& where) {
        record(tol - std::abs(value), where, std::abs(value), "<=", tol);
    }

private:
    void record(double margin, const std::string& where, double lhs, const char* rel, double rhs) {
        ++checks;
        worst_margin = std::min(worst_margin, margin);
        if (!(margin >= 0.0) && counterexamples.size() < 3) {
            std::ostringstream os;
            os.precision(17);
            os << where << ": " << lhs << ' ' << rel << ' ' << rhs << " violated";
            counterexamples.push_back(os.str());
        }
    }
};

inline constexpr double kIdentityTol = 1e-10;
inline constexpr double kInequalitySlack = 1e-9;
// The distinct objective has several local minima; 8 starts missed one in 200 instances.
inline constexpr int kDistinctStarts = 32;

namespace detail {

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline void projector_algebra(const HermitianObservable& o, PropertyResult& r, const std::string& where) {
    const auto& ps = o.spectrum().projectors;
    ComplexMatrix sum = ComplexMatrix::Zero(o.dim(), o.dim());
    ComplexMatrix recon = ComplexMatrix::Zero(o.dim(), o.dim());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = 0; j < ps.size(); ++j) {
            const ComplexMatrix expected = i == j ? ps[i] : ComplexMatrix::Zero(o.dim(), o.dim());
            r.small(max_abs(ps[i] * ps[j] - expected), kIdentityTol, where + " projector product");
        }
        sum += ps[i];
        recon += o.eigenvalue(i) * ps[i];
    }
    r.small(max_abs(sum - ComplexMatrix::Identity(o.dim(), o.dim())), kIdentityTol, where + " completeness");
    r.small(max_abs(recon - o.matrix()), 1e-9 * std::max(1.0, max_abs(o.matrix())), where + " reconstruction");
}

}  // namespace detail

using InstanceCheck = std::function<void(const Instance&, PropertyResult&)>;

struct Property {
    std::string name;
    InstanceCheck check;
};

inline std::vector<Property> instance_properties() {
    using seqent::detail::entropy_of_weights;
    std::vector<Property> props;

    props.push_back({"projector_algebra", [](const Instance& in, PropertyResult& r) {
                         detail::projector_algebra(in.a, r, in.describe() + " A");
                         detail::projector_algebra(in.b, r, in.describe() + " B");
                     }});

    props.push_back({"sequential_marginals", [](const Instance& in, PropertyResult& r) {
                         const auto joint = wigner_joint_2(in.rho, in.a, in.b);
                         const auto pa = raw_probabilities(in.rho, in.a);
                         const auto pb = raw_probabilities(luders_map(in.rho, in.a), in.b);
                         const auto ma = joint.marginal(0);
                         const auto mb = joint.marginal(1);
                         for (std::size_t i = 0; i < pa.size(); ++i) r.small(ma[i] - pa[i], kIdentityTol, in.describe());
                         for (std::size_t j = 0; j < pb.size(); ++j) r.small(mb[j] - pb[j], kIdentityTol, in.describe());
                         const auto joint3 = wigner_joint_3(in.rho, in.a, in.b, in.c);
                         const auto back = joint3.marginal_over({0, 1});
                         for (std::size_t k = 0; k < back.table().size(); ++k) {
                             r.small(back.table()[k] - joint.table()[k], kIdentityTol, in.describe() + " three-step");
                         }
                     }});

    props.push_back({"luders_map_structure", [](const Instance& in, PropertyResult& r) {
                         const auto once = luders_map(in.rho, in.a);
                         const auto twice = luders_map(once, in.a);
                         r.small(detail::max_abs(once.matrix() - twice.matrix()), 1e-12, in.describe() + " idempotence");
                         for (const auto& p : in.a.spectrum().projectors) {
                             r.small(detail::max_abs(commutator(once.matrix(), p)), kIdentityTol,
                                     in.describe() + " commutes with projector");
                         }
                         r.small(once.matrix().trace().real() - 1.0, kIdentityTol, in.describe() + " trace");
                     }});

    props.push_back({"entropy_identities", [](const Instance& in, PropertyResult& r) {
                         const auto rep = entropies_sequential(in.rho, in.a, in.b);
                         const auto collapsed = luders_map(in.rho, in.a);
                         r.small(rep.s_a - entropy_distinct(in.rho, in.a), kIdentityTol, in.describe() + " S_A");
                         r.small(rep.s_a - entropy_distinct(collapsed, in.a), kIdentityTol, in.describe() + " S_A collapsed");
                         r.small(rep.s_b - entropy_distinct(collapsed, in.b), kIdentityTol, in.describe() + " S_B");
                         const auto rep3 = entropies_sequential_3(in.rho, in.a, in.b, in.c);
                         const auto gamma = luders_map(collapsed, in.b);
                         r.small(*rep3.s_c - entropy_distinct(gamma, in.c), kIdentityTol, in.describe() + " S_C");
                     }});

    props.push_back({"interference_vanishes_on_collapsed_states", [](const Instance& in, PropertyResult& r) {
                         r.small(interference_gap(luders_map(in.rho, in.a), in.a, in.b), kIdentityTol, in.describe());
                         r.small(interference_gap(in.rho, in.a, in.a), kIdentityTol, in.describe() + " B = A");
                     }});

    props.push_back({"subadditivity", [](const Instance& in, PropertyResult& r) {
                         const auto e2 = entropies_sequential(in.rho, in.a, in.b);
                         r.at_least(e2.s_a + e2.s_b, e2.s_joint, kInequalitySlack, in.describe() + " pair");
                         const auto e3 = entropies_sequential_3(in.rho, in.a, in.b, in.c);
                         r.at_least(e3.s_a + e3.s_b + *e3.s_c, e3.s_joint, kInequalitySlack, in.describe() + " triple");
                     }});

    props.push_back({"joint_entropy_dominates_marginals", [](const Instance& in, PropertyResult& r) {
                         const auto e = entropies_sequential(in.rho, in.a, in.b);
                         r.at_least(e.s_joint, e.s_a, kInequalitySlack, in.describe() + " vs S_A");
                         r.at_least(e.s_joint, e.s_b, kInequalitySlack, in.describe() + " vs S_B");
                     }});

    props.push_back({"joint_entropy_overlap_bound", [](const Instance& in, PropertyResult& r) {
                         double sup = 0.0;
                         for (const auto& p : in.a.spectrum().projectors) {
                             for (const auto& q : in.b.spectrum().projectors) sup = std::max(sup, operator_norm(p * q * p));
                         }
                         const auto e = entropies_sequential(in.rho, in.a, in.b);
                         r.at_least(e.s_joint, -std::log(sup), kInequalitySlack, in.describe());
                     }});

    props.push_back({"strong_subadditivity", [](const Instance& in, PropertyResult& r) {
                         const auto e = entropies_sequential_3(in.rho, in.a, in.b, in.c);
                         r.at_least(*e.s_ab + *e.s_bc, e.s_joint + e.s_b, kInequalitySlack, in.describe());
                     }});

    props.push_back({"projector_norm_inequality", [](const Instance& in, PropertyResult& r) {
                         for (const auto& p : in.a.spectrum().projectors) {
                             for (const auto& q : in.b.spectrum().projectors) {
                                 const double lhs = std::pow(operator_norm(p * q), 2);
                                 r.small(lhs - operator_norm(p * q * p), kIdentityTol, in.describe() + " identity");
                                 r.at_least(0.25 * std::pow(operator_norm(p + q), 2), lhs, kIdentityTol,
                                            in.describe() + " quarter-norm");
                             }
                         }
                     }});

    props.push_back({"bound_chain", [](const Instance& in, PropertyResult& r) {
                         const BoundReport br = bound_report(in.a, in.b);
                         r.at_least(br.lambda_s, br.krishna_parthasarathy, kInequalitySlack, in.describe() + " lambda_s vs KP");
                         r.at_least(br.krishna_parthasarathy, br.partovi, kInequalitySlack, in.describe() + " KP vs Partovi");
                         if (br.maassen_uffink) {
                             r.at_least(br.lambda_s, *br.maassen_uffink, kInequalitySlack, in.describe() + " lambda_s vs MU");
                             r.at_least(*br.maassen_uffink, *br.deutsch, kInequalitySlack, in.describe() + " MU vs Deutsch");
                             r.small(*br.maassen_uffink - br.krishna_parthasarathy, kIdentityTol, in.describe() + " MU = KP");
                             r.small(*br.deutsch - br.partovi, kIdentityTol, in.describe() + " Deutsch = Partovi");
                         }
                     }});

    props.push_back({"successive_exceeds_distinct", [](const Instance& in, PropertyResult& r) {
                         OptimizerConfig cfg;
                         cfg.starts = kDistinctStarts;
                         cfg.seed = in.seed;
                         const double ld = lambda_d_numeric(in.a, in.b, cfg).value;
                         const double ls = lambda_s_two(in.a, in.b);
                         r.at_least(ls, ld, 1e-6, in.describe() + " lambda_s vs numeric lambda_d");
                         r.at_least(ld, krishna_parthasarathy_bound(in.a, in.b), 1e-6,
                                    in.describe() + " numeric lambda_d vs KP");
                     }});

    props.push_back({"second_measurement_entropy_floor", [](const Instance& in, PropertyResult& r) {
                         const auto e = entropies_sequential(in.rho, in.a, in.b);
                         r.at_least(e.s_b, lambda_s_two(in.a, in.b), kInequalitySlack, in.describe());
                     }});

    props.push_back({"second_stage_dominance", [](const Instance& in, PropertyResult& r) {
                         if (!in.a.nondegenerate()) return;
                         const auto t = lambda_s_three(in.a, in.b, in.c);
                         r.at_least(t.second_stage_bound, t.first_stage_bound, kInequalitySlack, in.describe() + " stages");
                         r.at_least(t.joint, t.as_printed, kInequalitySlack, in.describe() + " joint vs separate");
                         const double rows = (t.transition.rowwise().sum().array() - 1.0).abs().maxCoeff();
                         const double cols = (t.transition.colwise().sum().array() - 1.0).abs().maxCoeff();
                         r.small(std::max(rows, cols), 1e-9, in.describe() + " doubly stochastic");
                     }});

    props.push_back({"robertson_relation", [](const Instance& in, PropertyResult& r) {
                         const auto v = variance_relations(in.rho, in.a, in.b);
                         r.at_least(v.var_a * v.var_b, v.robertson_rhs, kInequalitySlack, in.describe());
                     }});

    props.push_back({"successive_variance_relation", [](const Instance& in, PropertyResult& r) {
                         const auto v = variance_relations(in.rho, in.a, in.b);
                         r.at_least(v.successive_var_a * v.successive_var_b, v.successive_rhs, kInequalitySlack,
                                    in.describe());
                         r.small(detail::max_abs(commutator(in.a.matrix(), v.c_of_b)), kIdentityTol,
                                 in.describe() + " pinched observable commutes");
                     }});
    return props;
}

/// The qubit bound curves on a one-degree grid over [0°, 180°].
inline PropertyResult qubit_curve_chain(std::uint64_t seed) {
    PropertyResult r;
    r.name = "qubit_curve_chain";
    spin::ThetaCurve curve(spin::middle_regime_config(seed));
    for (int deg = 0; deg <= 180; ++deg) {
        const auto p = curve.at(spin::degrees_to_radians(deg));
        const std::string where = "theta " + std::to_string(deg);
        r.at_least(p.lambda_s, p.lambda_d, 1e-6, where + " lambda_s vs lambda_d");
        r.at_least(p.lambda_d, p.lambda_d2, 1e-6, where + " lambda_d vs lambda_d2");
        r.at_least(p.lambda_d2, 2.0 * p.lambda_d1, 1e-6, where + " lambda_d2 vs 2 lambda_d1");
    }
    return r;
}

struct SuiteResult {
    std::vector<PropertyResult> properties;
    bool passed() const {
        return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.passed(); });
    }
};

inline SuiteResult run_suite(std::size_t instances, long dim_lo, long dim_hi, std::uint64_t seed) {
    const auto ensemble = make_ensemble(instances, dim_lo, dim_hi, seed);
    SuiteResult suite;
    for (const auto& prop : instance_properties()) {
        PropertyResult r;
        r.name = prop.name;
        for (const auto& in : ensemble) prop.check(in, r);
        suite.properties.push_back(std::move(r));
    }
    suite.properties.push_back(qubit_curve_chain(seed));
    return suite;
}

}  // namespace seqent::verify

namespace seqent::cli {

struct VerifyArgs {
    long long instances = 200;
    std::string dims = "2-5";
};

/// Parses "lo-hi" or a single dimension; optimizer-backed checks cap it at 8.
inline std::pair<long, long> parse_dim_range(const std::string& s) {
    long lo = 0, hi = 0;
    char dash = 0;
    std::istringstream is(s);
    if (!(is >> lo)) throw InvalidArgument("dims: expected 'lo-hi' or a single dimension");
    if (is >> dash) {
        if (dash != '-' || !(is >> hi)) throw InvalidArgument("dims: expected 'lo-hi'");
    } else {
        hi = lo;
    }
    std::string rest;
    if (is >> rest) throw InvalidArgument("dims: trailing characters");
    if (lo < 2 || hi > 8 || lo > hi) throw InvalidArgument("dims: need 2 <= lo <= hi <= 8");
    return {lo, hi};
}

inline int cmd_verify(const GlobalOptions& g, const VerifyArgs& args, std::ostream& out, std::ostream& err) {
    return run_guarded(
        [&] {
            if (args.instances < 1) throw InvalidArgument("verify: instances must be at least 1");
            const auto [lo, hi] = parse_dim_range(args.dims);
            const auto suite = verify::run_suite(static_cast<std::size_t>(args.instances), lo, hi, g.seed);
            if (g.format == Format::json) {
                ordered_json j;
                j["command"] = "verify";
                j["seed"] = g.seed;
                j["instances"] = args.instances;
                j["dims"] = {lo, hi};
                ordered_json arr = ordered_json::array();
                for (const auto& p : suite.properties) {
                    arr.push_back({{"property", p.name},
                                   {"passed", p.passed()},
                                   {"checks", p.checks},
                                   {"worst_margin", num6(p.worst_margin)},
                                   {"counterexamples", p.counterexamples}});
                }
                j["properties"] = arr;
                j["passed"] = suite.passed();
                out << j.dump(2) << '\n';
            } else if (g.format == Format::csv) {
                out << "property,status,checks,worst_margin\n";
                for (const auto& p : suite.properties) {
                    out << p.name << ',' << (p.passed() ? "pass" : "fail") << ',' << p.checks << ','
                        << fmt6(p.worst_margin) << '\n';
                }
            } else {
                out << "# verify  seed=" << g.seed << "  instances=" << args.instances << "  dims=" << lo << '-'
                    << hi << '\n';
                for (const auto& p : suite.properties) {
                    out << (p.passed() ? "PASS " : "FAIL ") << std::left << std::setw(44) << p.name
                        << "checks=" << std::setw(8) << p.checks << "worst_margin=" << fmt6(p.worst_margin) << '\n';
                    for (const auto& c : p.counterexamples) out << "    counterexample: " << c << '\n';
                }
                out << (suite.passed() ? "all properties hold" : "property failures detected") << '\n';
            }
            return suite.passed() ? kSuccess : kMismatch;
        },
        err);
}

}  // namespace seqent::cli
