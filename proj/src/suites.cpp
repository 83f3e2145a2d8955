#include "qsep/suites.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "qsep/channels.hpp"
#include "qsep/criteria.hpp"
#include "qsep/errors.hpp"
#include "qsep/oracle.hpp"

namespace qsep::suites {

namespace {

constexpr double kInfo = std::numeric_limits<double>::quiet_NaN();

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(Clock::now() - start_).count();
    }

private:
    using Clock = std::chrono::steady_clock;
    Clock::time_point start_ = Clock::now();
};

void push(SuiteResult& s, std::string name, double value, double limit, bool ok,
          std::string note) {
    if (!ok) s.passed = false;
    s.properties.push_back({std::move(name), value, limit, ok, std::move(note)});
}

void push_max(SuiteResult& s, std::string name, double value, double limit) {
    push(s, std::move(name), value, limit, value <= limit, "must be <= limit");
}

void push_min(SuiteResult& s, std::string name, double value, double limit) {
    push(s, std::move(name), value, limit, value >= limit, "must be >= limit");
}

void push_info(SuiteResult& s, std::string name, double value, std::string note) {
    push(s, std::move(name), value, kInfo, true, std::move(note));
}

ComplexVector basis_vector(int d, int i) {
    ComplexVector v(d);
    v[i] = 1.0;
    return v;
}

/// (id (x) D_eps)(rho) by mapping every B block through the channel.
ComplexMatrix apply_id_depolarize(const DepolarizingChannel& dep,
                                  const BipartiteState& rho) {
    BlockView bv = blocks_of(rho);
    for (auto& b : bv.blocks) b = depolarize(dep, b);
    return reassemble(bv);
}

}  // namespace

BipartiteState random_block_positive(int dA, int dB, int k, std::mt19937_64& rng) {
    if (k < 1) throw BadDimension("need k >= 1");
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> w(static_cast<size_t>(k));
    double sum = 0.0;
    for (double& x : w) {
        x = expo(rng) + 1e-12;
        sum += x;
    }
    std::vector<DecompositionTerm> terms;
    for (double x : w) {
        ComplexVector a(dA);
        double n2 = 0.0;
        for (int i = 0; i < dA; ++i) {
            const double e = uni(rng) + 1e-6;
            a[i] = e;
            n2 += e * e;
        }
        const double n = std::sqrt(n2);
        for (int i = 0; i < dA; ++i) a[i] /= n;
        terms.push_back({x / sum, PureState(a, true), random_pure(dB, rng)});
    }
    return assemble(SeparableDecomposition(dA, dB, std::move(terms)));
}

BipartiteState random_zero_pattern_state(int dA, int dB, std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(static_cast<size_t>(dB));
    double sum = 0.0;
    for (double& x : w) {
        x = expo(rng) + 1e-12;
        sum += x;
    }
    ComplexMatrix m(dA * dB);
    for (int l = 0; l < dB; ++l) {
        const ComplexMatrix al = random_density(dA, rng);
        for (int i = 0; i < dA; ++i)
            for (int j = 0; j < dA; ++j) m(i * dB + l, j * dB + l) = (w[l] / sum) * al(i, j);
    }
    return BipartiteState(dA, dB, m, true);
}

BipartiteState plus_plus_projector() {
    ComplexMatrix m(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = 0.25;
    return BipartiteState(2, 2, m, true);
}

BipartiteState bell_state() {
    return BipartiteState(2, 2, outer(maximally_entangled(2, true).vector()), true);
}

SuiteResult theorem1_roundtrip(int trials, std::uint64_t seed, sweep::Mode mode) {
    Timer tm;
    SuiteResult s;
    s.suite = "theorem1";
    static constexpr std::array<std::pair<int, int>, 9> combos{
        {{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {3, 4}, {4, 2}, {4, 3}, {4, 4}}};
    struct R {
        double raw = 0.0, norm = 0.0;
    };
    const auto res = sweep::run<R>(trials, seed, mode, [](int t, std::mt19937_64& rng) {
        const auto [dA, dB] = combos[static_cast<size_t>(t) % combos.size()];
        std::uniform_int_distribution<int> kd(1, 6);
        auto [dec, rho] = random_separable(dA, dB, kd(rng), rng);
        const HolevoChannel raw = ebc_from_decomposition(dec);
        const ComplexMatrix in_raw = outer(maximally_entangled(dA, false).vector());
        R r;
        r.raw = frobenius_distance(apply_id_tensor(raw, in_raw, dA), rho.matrix());
        const HolevoChannel nrm = normalized_ebc_from_decomposition(dec);
        const ComplexMatrix in_nrm = outer(maximally_entangled(dA, true).vector());
        r.norm = frobenius_distance(apply_id_tensor(nrm, in_nrm, dA), rho.matrix());
        return r;
    });
    double raw_max = 0.0, norm_max = 0.0;
    for (const R& r : res) {
        raw_max = std::max(raw_max, r.raw);
        norm_max = std::max(norm_max, r.norm);
    }
    push_max(s, "raw_roundtrip_residual", raw_max, 1e-10);
    push_max(s, "normalized_roundtrip_residual", norm_max, 1e-10);

    // Single-term decomposition |0><0| (x) |0><0|: through the raw channel the
    // normalized maximally entangled input comes out at half weight.
    const ComplexVector e0 = basis_vector(2, 0);
    const SeparableDecomposition single(2, 2,
                                        {{1.0, PureState(e0, true), PureState(e0, true)}});
    const HolevoChannel raw1 = ebc_from_decomposition(single);
    ComplexMatrix half(4);
    half(0, 0) = 0.5;
    const ComplexMatrix got = apply_id_tensor(
        raw1, outer(maximally_entangled(2, true).vector()), 2);
    push_max(s, "half_weight_example_residual", frobenius_distance(got, half), 1e-14);

    // Effect-sum classification: the raw single-term channel keeps a strict
    // fraction of the trace, the scaled one overshoots, and scaling a
    // maximally-mixed-marginal decomposition is exactly trace preserving.
    const bool raw_sub = trace_preservation(raw1) == TracePreservation::SubPreserving;
    const bool scaled_bad = trace_preservation(normalized_ebc_from_decomposition(single)) ==
                            TracePreservation::Invalid;
    std::vector<DecompositionTerm> mm;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            mm.push_back({0.25, PureState(basis_vector(2, i), true),
                          PureState(basis_vector(2, j), true)});
    const bool scaled_tp =
        trace_preservation(normalized_ebc_from_decomposition(
            SeparableDecomposition(2, 2, std::move(mm)))) ==
        TracePreservation::Preserving;
    const bool classes = raw_sub && scaled_bad && scaled_tp;
    push(s, "completeness_classification", classes ? 1.0 : 0.0, 1.0, classes,
         "1 = sub-preserving / invalid / preserving as constructed");

    s.seconds = tm.seconds();
    return s;
}

SuiteResult qutrit_closed_form_suite(int trials, std::uint64_t seed, sweep::Mode mode) {
    Timer tm;
    SuiteResult s;
    s.suite = "qutrit-closed-form";
    struct R {
        double printed = 0.0, corrected = 0.0, ptmin = 0.0, defect = 0.0;
    };
    const auto res = sweep::run<R>(trials, seed, mode, [](int, std::mt19937_64& rng) {
        const BipartiteState st(3, 3, random_density(9, rng), true);
        const QutritReduction qr = qutrit_closed_form(st);
        R r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) {
                        const Complex d = qr.delta(i * 3 + a, j * 3 + b);
                        if ((a == 1 && b == 2) || (a == 2 && b == 1)) {
                            const Complex b22 = st.matrix()(i * 3 + 2, j * 3 + 2);
                            r.corrected = std::max(r.corrected, std::abs(d - b22 / 8.0));
                            r.defect = std::max(r.defect, std::abs(d));
                        } else {
                            r.printed = std::max(r.printed, std::abs(d));
                        }
                    }
        r.ptmin = min_eigenvalue(
            partial_transpose(qr.channel_route.matrix(), 3, 3));
        return r;
    });
    double printed = 0.0, corrected = 0.0, ptmin = 0.0, defect = 0.0;
    bool first = true;
    for (const R& r : res) {
        printed = std::max(printed, r.printed);
        corrected = std::max(corrected, r.corrected);
        defect = std::max(defect, r.defect);
        ptmin = first ? r.ptmin : std::min(ptmin, r.ptmin);
        first = false;
    }
    push_max(s, "matching_entries_residual", printed, 1e-10);
    push_max(s, "corrected_12_21_residual", corrected, 1e-10);
    push_min(s, "reduced_pt_min_eigenvalue", ptmin, -1e-9);
    push_info(s, "table_defect_magnitude", defect,
              "largest |B22|/8 the entry table drops");
    s.seconds = tm.seconds();
    return s;
}

SuiteResult braunstein_suite(int trials, std::uint64_t seed, sweep::Mode mode) {
    Timer tm;
    SuiteResult s;
    s.suite = "braunstein";
    struct R {
        double roundtrip = 0.0, pair_sum = 0.0, total = 0.0;
    };
    const auto res = sweep::run<R>(trials, seed, mode, [](int, std::mt19937_64& rng) {
        const BipartiteState st(2, 2, random_density(4, rng), true);
        const BraunsteinCoefficients co = braunstein_coefficients(st);
        R r;
        r.roundtrip = frobenius_distance(braunstein_assemble(co), st.matrix());
        std::uniform_real_distribution<double> ue(0.0, 1.0);
        const QCoefficients q = depolarizing_q_coefficients(co, ue(rng));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double ps = 0.0;
                for (int n = 0; n < 4; ++n) ps += q[n][i][j];
                r.pair_sum = std::max(r.pair_sum, std::abs(ps - 1.0 / 9.0));
            }
        r.total = std::abs(total_q(q) - 1.0);
        return r;
    });
    double roundtrip = 0.0, pair_sum = 0.0, total = 0.0;
    for (const R& r : res) {
        roundtrip = std::max(roundtrip, r.roundtrip);
        pair_sum = std::max(pair_sum, r.pair_sum);
        total = std::max(total, r.total);
    }
    push_max(s, "coefficient_roundtrip_residual", roundtrip, 1e-10);
    push_max(s, "q_pair_sum_residual", pair_sum, 1e-12);
    push_max(s, "q_total_residual", total, 1e-12);

    const BraunsteinCoefficients bell = braunstein_coefficients(bell_state());
    double bell_resid = 0.0;
    for (int i = 0; i < 3; ++i) {
        bell_resid = std::max(bell_resid, std::abs(bell.bloch_a[i]));
        bell_resid = std::max(bell_resid, std::abs(bell.bloch_b[i]));
        for (int j = 0; j < 3; ++j) {
            const double want = i != j ? 0.0 : (i == 1 ? -1.0 : 1.0);
            bell_resid = std::max(bell_resid, std::abs(bell.corr[i][j] - want));
        }
    }
    push_max(s, "bell_coefficients_residual", bell_resid, 1e-12);
    s.seconds = tm.seconds();
    return s;
}

SuiteResult thresholds_suite() {
    Timer tm;
    SuiteResult s;
    s.suite = "thresholds";

    // Worst two-qubit corner: unit single-axis terms against fully negative
    // correlations drives one weight to (1 - 15 eps)/36.
    BraunsteinCoefficients corner;
    for (int i = 0; i < 3; ++i) {
        corner.bloch_a[i] = 1.0;
        corner.bloch_b[i] = 1.0;
        for (int j = 0; j < 3; ++j) corner.corr[i][j] = -1.0;
    }
    const double at = min_q(depolarizing_q_coefficients(corner, 1.0 / 15.0));
    const double above = min_q(depolarizing_q_coefficients(corner, 1.0 / 15.0 + 1e-3));
    push_max(s, "corner_min_q_at_threshold", std::abs(at), 1e-12);
    push(s, "corner_min_q_above_threshold", above, -1e-5, above < -1e-5,
         "must be < limit");

    // Any two-qubit state is certified at eps = 1/15.
    std::mt19937_64 rng(0x7157e5ULL);
    double worst_min_q = 0.0;
    bool all_separable = true;
    bool first = true;
    for (int t = 0; t < 25; ++t) {
        const BipartiteState st(2, 2, random_density(4, rng), true);
        const Verdict v = depolarizing_two_qubit_check(st, 1.0 / 15.0);
        all_separable = all_separable && v.outcome == Outcome::Separable;
        for (const auto& [k, val] : v.diagnostics)
            if (k == "min_q") {
                worst_min_q = first ? val : std::min(worst_min_q, val);
                first = false;
            }
    }
    push(s, "random_states_certified_at_1_15", all_separable ? 1.0 : 0.0, 1.0,
         all_separable, "1 = every sampled state certified");
    push_min(s, "random_states_min_q_at_1_15", worst_min_q, -1e-12);

    // Isotropic family: the depolarized maximally entangled state crosses the
    // partial-transpose boundary exactly at eps = 1/(d+1).
    double at_resid = 0.0;
    double above_worst = 0.0;
    bool classify_ok = true;
    bool first_above = true;
    for (int d = 2; d <= 4; ++d) {
        const BipartiteState pb(
            d, d, outer(maximally_entangled(d, true).vector()), true);
        const double eps0 = 1.0 / (d + 1.0);
        const BipartiteState iso_at(
            d, d, apply_id_depolarize(DepolarizingChannel(d, eps0), pb), true);
        const double lo_at = min_eigenvalue(
            partial_transpose(iso_at.matrix(), d, d));
        at_resid = std::max(at_resid, std::abs(lo_at));
        const BipartiteState iso_above(
            d, d, apply_id_depolarize(DepolarizingChannel(d, eps0 + 1e-3), pb), true);
        const double lo_above = min_eigenvalue(
            partial_transpose(iso_above.matrix(), d, d));
        above_worst = first_above ? lo_above : std::max(above_worst, lo_above);
        first_above = false;
        classify_ok = classify_ok &&
                      depolarizing_isotropic_threshold(d, eps0) == EbThreshold::EB &&
                      depolarizing_isotropic_threshold(d, eps0 + 1e-3) ==
                          EbThreshold::NotEB;
    }
    push_max(s, "isotropic_pt_min_at_threshold", at_resid, 1e-10);
    push(s, "isotropic_pt_min_above_threshold", above_worst, -1e-6,
         above_worst < -1e-6, "must be < limit");
    classify_ok = classify_ok &&
                  depolarizing_isotropic_threshold(2, 1.0 / 3.0) == EbThreshold::EB &&
                  depolarizing_isotropic_threshold(2, 0.34) == EbThreshold::NotEB;
    push(s, "threshold_classification", classify_ok ? 1.0 : 0.0, 1.0, classify_ok,
         "1 = breaking iff eps <= 1/(d+1) on both sides, d = 2, 3, 4");

    s.seconds = tm.seconds();
    push_max(s, "runtime_seconds", s.seconds, 1.0);
    return s;
}

SuiteResult soundness_sweep(int trials, std::uint64_t seed, sweep::Mode mode) {
    Timer tm;
    SuiteResult s;
    s.suite = "soundness-sweep";
    constexpr int kCrit = 5;
    static const std::array<const char*, kCrit> names{
        "corollary1", "blocks-psd", "corollary2", "basis-reduction",
        "depolarizing-2q@1"};
    struct R {
        std::array<std::uint8_t, kCrit> applicable{}, claimed{}, unsound{}, certbad{};
        std::uint8_t oracle_sep = 0;
    };
    const auto res = sweep::run<R>(trials, seed, mode, [](int t, std::mt19937_64& rng) {
        const int dA = 2;
        const int dB = (t % 2 == 0) ? 2 : 3;
        const int kind = (t / 2) % 6;
        auto make = [&]() -> BipartiteState {
            switch (kind) {
                case 0: return BipartiteState(dA, dB, random_density(dA * dB, rng), true);
                case 1: {
                    std::uniform_int_distribution<int> kd(1, 4);
                    return random_separable(dA, dB, kd(rng), rng).second;
                }
                case 2:
                    return BipartiteState(dA, dB,
                                          outer(random_pure(dA * dB, rng).vector()), true);
                case 3: return random_zero_pattern_state(dA, dB, rng);
                case 4: {
                    std::uniform_int_distribution<int> kd(1, 4);
                    return random_block_positive(dA, dB, kd(rng), rng);
                }
                default: {
                    std::uniform_real_distribution<double> ue(0.0, 1.0);
                    const ComplexMatrix base = random_density(dA * dB, rng);
                    const DepolarizingChannel dep(dA * dB, ue(rng));
                    return BipartiteState(dA, dB, depolarize(dep, base), true);
                }
            }
        };
        const BipartiteState st = make();
        const OracleVerdict ov = oracle_separable(st);
        R r;
        r.oracle_sep = ov.outcome == OracleOutcome::Separable ? 1 : 0;
        auto record = [&](int idx, const Verdict& v) {
            r.applicable[idx] = 1;
            if (v.outcome != Outcome::Separable) return;
            r.claimed[idx] = 1;
            if (!r.oracle_sep) r.unsound[idx] = 1;
            if (v.certificate) {
                try {
                    certified_verdict(st, *v.certificate);
                } catch (const CertificateMismatch&) {
                    r.certbad[idx] = 1;
                }
            }
        };
        record(0, corollary1_zero_pattern(st));
        record(1, theorem3_block_psd(st));
        record(2, corollary2_sampled(st, 200, rng));
        record(3, basis_reduction(st, computational_basis(dB)).verdict);
        if (dB == 2) record(4, depolarizing_two_qubit_check(st, 1.0));
        return r;
    });

    std::array<long, kCrit> applicable{}, claimed{}, unsound{}, certbad{}, missed{},
        sep_seen{};
    long oracle_sep = 0;
    for (const R& r : res) {
        oracle_sep += r.oracle_sep;
        for (int c = 0; c < kCrit; ++c) {
            applicable[c] += r.applicable[c];
            claimed[c] += r.claimed[c];
            unsound[c] += r.unsound[c];
            certbad[c] += r.certbad[c];
            if (r.applicable[c] && r.oracle_sep) {
                ++sep_seen[c];
                if (!r.claimed[c]) ++missed[c];
            }
        }
    }
    long total_unsound = 0, total_certbad = 0;
    long min_claims = -1;
    for (int c = 0; c < kCrit; ++c) {
        total_unsound += unsound[c];
        total_certbad += certbad[c];
        if (applicable[c] > 0)
            min_claims = min_claims < 0 ? claimed[c] : std::min(min_claims, claimed[c]);
        std::ostringstream os;
        os << names[c] << ": " << applicable[c] << " run, " << claimed[c]
           << " separable claims, " << unsound[c] << " unsound; oracle-separable missed "
           << missed[c] << "/" << sep_seen[c];
        s.notes.push_back(os.str());
    }
    push_max(s, "unsound_claims", static_cast<double>(total_unsound), 0.0);
    push_max(s, "invalid_certificates", static_cast<double>(total_certbad), 0.0);
    if (trials > 0) {
        push_min(s, "min_claims_per_criterion",
                 static_cast<double>(std::max<long>(min_claims, 0)), 1.0);
        push_info(s, "oracle_separable_fraction",
                  static_cast<double>(oracle_sep) / trials, "ensemble balance");
    }
    s.seconds = tm.seconds();
    return s;
}

std::vector<std::string> suite_names() {
    return {"theorem1", "qutrit-closed-form", "braunstein", "thresholds",
            "soundness-sweep"};
}

SuiteResult run_suite(const std::string& name, int trials, std::uint64_t seed,
                      sweep::Mode mode) {
    if (name == "theorem1")
        return theorem1_roundtrip(trials > 0 ? trials : 120, seed, mode);
    if (name == "qutrit-closed-form")
        return qutrit_closed_form_suite(trials > 0 ? trials : 60, seed, mode);
    if (name == "braunstein")
        return braunstein_suite(trials > 0 ? trials : 120, seed, mode);
    if (name == "thresholds") return thresholds_suite();
    if (name == "soundness-sweep")
        return soundness_sweep(trials > 0 ? trials : 1200, seed, mode);
    throw BadSpec("unknown suite '" + name + "'");
}

}  // namespace qsep::suites
