// qsep: generate bipartite states, apply measure-and-prepare channels, run
// separability criteria, execute the reproduction suites.
//
// Exit codes: 0 a verdict or artifact was computed, 1 a verified property
// failed, 2 bad input (file, spec string, or option set).

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsep/channels.hpp"
#include "qsep/criteria.hpp"
#include "qsep/errors.hpp"
#include "qsep/io.hpp"
#include "qsep/oracle.hpp"
#include "qsep/states.hpp"
#include "qsep/suites.hpp"
#include "qsep/sweep.hpp"
#include "qsep/version.hpp"

namespace {

using namespace qsep;

constexpr std::uint64_t kDefaultSeed = 42;

std::uint64_t env_seed() {
    const char* raw = std::getenv("QSEP_SEED");
    if (raw == nullptr || *raw == '\0') return kDefaultSeed;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0')
        throw ParseError(std::string("QSEP_SEED is not an unsigned integer: '") + raw +
                         "'");
    return static_cast<std::uint64_t>(v);
}

int parse_int(const std::string& w, const char* what) {
    char* end = nullptr;
    const long v = std::strtol(w.c_str(), &end, 10);
    if (end == w.c_str() || *end != '\0')
        throw BadSpec(std::string(what) + " must be an integer, got '" + w + "'");
    return static_cast<int>(v);
}

double parse_double(const std::string& w, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(w.c_str(), &end);
    if (end == w.c_str() || *end != '\0')
        throw BadSpec(std::string(what) + " must be a number, got '" + w + "'");
    return v;
}

/// (id (x) D_eps)(rho) on the B side.
BipartiteState depolarize_b_side(const BipartiteState& rho, double eps) {
    BlockView bv = blocks_of(rho);
    const DepolarizingChannel dep(rho.dB(), eps);
    for (auto& b : bv.blocks) b = depolarize(dep, b);
    return BipartiteState(rho.dA(), rho.dB(), reassemble(bv), rho.normalized());
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
    std::vector<std::string> spec;
    std::string out;
    std::string cert;
    std::uint64_t seed = 0;
};

void expect_words(const std::vector<std::string>& w, size_t n, const char* usage) {
    if (w.size() != n) throw BadSpec(std::string("expected '") + usage + "'");
}

int run_gen(const GenArgs& a) {
    std::mt19937_64 rng(a.seed);
    const std::string& head = a.spec.front();

    std::optional<BipartiteState> density;
    std::optional<PureState> vec;
    std::vector<int> vec_dims;
    std::optional<SeparableDecomposition> cert;

    if (head == "bell") {
        expect_words(a.spec, 1, "bell");
        density = suites::bell_state();
    } else if (head == "maxent" || head == "maxent-unnormalized") {
        expect_words(a.spec, 2, head == "maxent" ? "maxent d" : "maxent-unnormalized d");
        const int d = parse_int(a.spec[1], "d");
        vec = maximally_entangled(d, head == "maxent");
        vec_dims = {d, d};
    } else if (head == "random-separable") {
        expect_words(a.spec, 4, "random-separable dA dB k");
        const int dA = parse_int(a.spec[1], "dA");
        const int dB = parse_int(a.spec[2], "dB");
        const int k = parse_int(a.spec[3], "k");
        auto [dec, rho] = random_separable(dA, dB, k, rng);
        density = rho;
        cert = std::move(dec);
    } else if (head == "random-density") {
        expect_words(a.spec, 2, "random-density d");
        const int d = parse_int(a.spec[1], "d");
        density = BipartiteState(1, d, random_density(d, rng), true);
    } else if (head == "depolarized-maxent") {
        expect_words(a.spec, 3, "depolarized-maxent d epsilon");
        const int d = parse_int(a.spec[1], "d");
        const double eps = parse_double(a.spec[2], "epsilon");
        const BipartiteState pb(d, d, outer(maximally_entangled(d, true).vector()), true);
        density = depolarize_b_side(pb, eps);
    } else if (head == "eq22-random") {
        expect_words(a.spec, 1, "eq22-random");
        density = suites::random_zero_pattern_state(2, 2, rng);
    } else if (head == "eq55") {
        expect_words(a.spec, 1, "eq55");
        density = suites::plus_plus_projector();
    } else {
        throw BadSpec("unknown gen spec '" + head +
                      "'; known: bell, maxent d, maxent-unnormalized d, "
                      "random-separable dA dB k, random-density d, "
                      "depolarized-maxent d epsilon, eq22-random, eq55");
    }

    if (!a.cert.empty()) {
        if (!cert) throw BadSpec("--cert only applies to random-separable");
        save_decomposition(a.cert, *cert);
    }
    if (density) {
        if (a.out.empty()) save_density(std::cout, *density);
        else save_density(a.out, *density);
    } else {
        if (a.out.empty()) save_vector(std::cout, *vec, vec_dims);
        else save_vector(a.out, *vec, vec_dims);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// check

struct CheckArgs {
    std::string criterion;
    std::string input;
    std::string basis = "computational";
    std::string report;
    std::string cert_out;
    double epsilon = -1.0;
    bool epsilon_given = false;
    int d = 0;
    int trials = 200;
    std::uint64_t seed = 0;
};

// raw holds the input bytes, read once up front: pipes cannot be reopened,
// and the report digest must hash exactly what was parsed.
BipartiteState require_state(const CheckArgs& a, const std::string& raw) {
    if (a.input.empty())
        throw BadSpec("criterion '" + a.criterion + "' needs an input file");
    const MatrixFile f = parse_matrix(raw, a.input);
    if (!f.state)
        throw BadSpec(a.input + ": input must describe a bipartite state "
                      "(kind density, or kind vector with dims [dA, dB])");
    return *f.state;
}

double require_epsilon(const CheckArgs& a) {
    if (!a.epsilon_given)
        throw BadSpec("criterion '" + a.criterion + "' needs --epsilon");
    return a.epsilon;
}

std::vector<ComplexVector> resolve_basis(const std::string& token, int dB) {
    if (token == "computational") return computational_basis(dB);
    if (token == "paper-qutrit") {
        if (dB != 3)
            throw BadSpec("--basis paper-qutrit needs a 3-dimensional B side, got " +
                          std::to_string(dB));
        return qutrit_reduction_basis();
    }
    return load_basis(token);
}

std::string certificate_summary(const BipartiteState& st,
                                const SeparableDecomposition& cert) {
    const double resid = frobenius_distance(assemble(cert).matrix(), st.matrix());
    std::ostringstream os;
    os << cert.terms().size() << "-term product decomposition, reassembly residual "
       << std::scientific << std::setprecision(2) << resid;
    return os.str();
}

int run_check(const CheckArgs& a) {
    VerdictReport rep;
    rep.tool_version = kToolVersion;
    rep.command = "check " + a.criterion;
    rep.criterion = a.criterion;

    std::optional<BipartiteState> st;
    std::optional<Verdict> verdict;
    std::string raw;
    if (!a.input.empty()) raw = read_text(a.input);

    if (a.criterion == "corollary1") {
        st = require_state(a, raw);
        verdict = corollary1_zero_pattern(*st);
    } else if (a.criterion == "blocks-psd") {
        st = require_state(a, raw);
        verdict = theorem3_block_psd(*st);
    } else if (a.criterion == "corollary2") {
        st = require_state(a, raw);
        std::mt19937_64 rng(a.seed);
        verdict = corollary2_sampled(*st, a.trials, rng);
        rep.seed_used = true;
        rep.seed = a.seed;
    } else if (a.criterion == "ppt") {
        st = require_state(a, raw);
        verdict = ppt_check(*st);
    } else if (a.criterion == "oracle") {
        st = require_state(a, raw);
        const OracleVerdict ov = oracle_separable(*st);
        rep.outcome = to_string(ov.outcome);
        rep.details = ov.evidence;
        rep.diagnostics.emplace_back("pt_min_eigenvalue", ov.pt_spectrum.front());
    } else if (a.criterion == "basis-reduction") {
        st = require_state(a, raw);
        const BasisReduction br = basis_reduction(*st, resolve_basis(a.basis, st->dB()));
        verdict = br.verdict;
    } else if (a.criterion == "depolarizing-2q") {
        st = require_state(a, raw);
        verdict = depolarizing_two_qubit_check(*st, require_epsilon(a));
    } else if (a.criterion == "isotropic") {
        const double eps = require_epsilon(a);
        int d = a.d;
        if (!a.input.empty()) {
            st = require_state(a, raw);
            d = st->dB();
        } else if (d < 2) {
            throw BadSpec("criterion 'isotropic' needs --d (or an input file)");
        }
        const BipartiteState witness = st ? depolarize_b_side(*st, eps)
                                          : depolarize_b_side(
                                                BipartiteState(
                                                    d, d,
                                                    outer(maximally_entangled(d, true)
                                                              .vector()),
                                                    true),
                                                eps);
        const double pt_min = min_eigenvalue(
            partial_transpose(witness.matrix(), witness.dA(), witness.dB()));
        const double threshold = 1.0 / (d + 1.0);
        Verdict v;
        v.criterion = "isotropic";
        if (depolarizing_isotropic_threshold(d, eps) == EbThreshold::EB) {
            v.outcome = Outcome::Separable;
            v.details = "noise at or below 1/(d+1): the one-sided depolarizing map "
                        "breaks entanglement, so its output is separable for every "
                        "input";
        } else if (pt_min < -kTauPsd) {
            v.outcome = Outcome::Entangled;
            v.details = "noise above 1/(d+1) and the depolarized state has a "
                        "negative partial-transpose eigenvalue";
        } else {
            v.outcome = Outcome::Inconclusive;
            v.details = "noise above 1/(d+1) but this input's depolarized output "
                        "stays PPT";
        }
        v.diagnostics.emplace_back("epsilon", eps);
        v.diagnostics.emplace_back("threshold", threshold);
        v.diagnostics.emplace_back("witness_pt_min", pt_min);
        verdict = std::move(v);
    } else {
        throw BadSpec("unknown criterion '" + a.criterion +
                      "'; known: corollary1, blocks-psd, corollary2, ppt, oracle, "
                      "basis-reduction, depolarizing-2q, isotropic");
    }

    if (!a.input.empty()) {
        rep.input_path = a.input;
        rep.input_digest = bytes_digest(raw);
    }
    if (verdict) {
        rep.criterion = verdict->criterion;
        rep.outcome = to_string(verdict->outcome);
        rep.details = verdict->details;
        rep.diagnostics = verdict->diagnostics;
        if (verdict->certificate && st)
            rep.certificate = certificate_summary(*st, *verdict->certificate);
        if (!a.cert_out.empty()) {
            if (!verdict->certificate)
                throw BadSpec("no certificate to write for this verdict");
            save_decomposition(a.cert_out, *verdict->certificate);
        }
    } else if (!a.cert_out.empty()) {
        throw BadSpec("no certificate to write for this verdict");
    }

    print_report(std::cout, rep);
    if (!a.report.empty()) write_report(a.report, rep);
    return 0;
}

// ---------------------------------------------------------------------------
// channel

struct ChannelArgs {
    std::string kind;
    std::string input;
    std::string out;
    std::string basis = "computational";
    std::string decomposition_out;
    double epsilon = -1.0;
    bool epsilon_given = false;
    bool normalized = false;
    std::string apply_to;
};

void emit_density(const std::string& out, const BipartiteState& rho) {
    if (out.empty()) save_density(std::cout, rho);
    else save_density(out, rho);
}

int run_channel(const ChannelArgs& a) {
    if (a.kind == "depolarize") {
        if (!a.epsilon_given) throw BadSpec("channel depolarize needs --epsilon");
        const MatrixFile f = load_matrix(a.input);
        if (!f.state) throw BadSpec(a.input + ": input must describe a bipartite state");
        emit_density(a.out, depolarize_b_side(*f.state, a.epsilon));
        return 0;
    }
    if (a.kind == "wavepacket") {
        const MatrixFile f = load_matrix(a.input);
        if (!f.state) throw BadSpec(a.input + ": input must describe a bipartite state");
        const BipartiteState& st = *f.state;
        const std::vector<ComplexVector> basis = resolve_basis(a.basis, st.dB());
        const BasisReduction br = basis_reduction(st, basis);
        std::cerr << "fixed point: "
                  << (br.verdict.outcome == Outcome::Separable ? "yes" : "no") << "\n";
        if (!a.decomposition_out.empty())
            save_decomposition(a.decomposition_out, pinching_decomposition(st, basis));
        emit_density(a.out, br.reduced);
        return 0;
    }
    if (a.kind == "from-decomposition") {
        const SeparableDecomposition dec = load_decomposition(a.input);
        const HolevoChannel ch = a.normalized ? normalized_ebc_from_decomposition(dec)
                                              : ebc_from_decomposition(dec);
        std::cerr << "effect completeness: " << to_string(trace_preservation(ch))
                  << "\n";
        ComplexMatrix out_m;
        int dA = 0;
        bool out_normalized = true;
        if (!a.apply_to.empty()) {
            // Apply the bare map to a single-system input state on C^{dA}.
            const MatrixFile f = load_matrix(a.apply_to);
            ComplexMatrix sigma;
            if (f.state && f.state->dA() == 1) sigma = f.state->matrix();
            else if (f.pure && static_cast<int>(f.dims.size()) == 1)
                sigma = outer(f.pure->vector());
            else
                throw BadSpec(a.apply_to +
                              ": --apply-to needs a single-system state "
                              "(density dims [1, d] or vector dims [d])");
            out_m = holevo_apply(ch, sigma);
            dA = 1;
        } else {
            // Feed the matched maximally entangled input through id (x) channel.
            dA = dec.dA();
            const ComplexMatrix in =
                outer(maximally_entangled(dA, a.normalized).vector());
            out_m = apply_id_tensor(ch, in, dA);
        }
        const double tr = trace(out_m).real();
        out_normalized = std::abs(tr - 1.0) <= 1e-9;
        emit_density(a.out, BipartiteState(dA, dA == 1 ? ch.dout() : dec.dB(), out_m,
                                           out_normalized));
        return 0;
    }
    throw BadSpec("unknown channel '" + a.kind +
                  "'; known: depolarize, wavepacket, from-decomposition");
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::string suite;
    int trials = 0;
    std::uint64_t seed = 0;
    bool serial = false;
    std::string report;
};

int run_verify(const VerifyArgs& a) {
    const sweep::Mode mode = a.serial ? sweep::Mode::Serial : sweep::Mode::Parallel;
    const suites::SuiteResult r = suites::run_suite(a.suite, a.trials, a.seed, mode);

    std::cout << "suite   : " << r.suite << "\n"
              << "seed    : " << a.seed << "\n"
              << "workers : " << (a.serial ? "serial" : "parallel") << "\n";
    for (const auto& p : r.properties) {
        std::ostringstream val, lim;
        val << std::scientific << std::setprecision(3) << p.value;
        const bool info = p.limit != p.limit;  // NaN marks report-only lines
        if (info) lim << "(reported)";
        else lim << "limit " << std::scientific << std::setprecision(3) << p.limit;
        std::cout << "  " << (info ? "info" : (p.ok ? "ok  " : "FAIL")) << "  "
                  << std::left << std::setw(34) << p.name << " " << std::setw(12)
                  << val.str() << " " << lim.str() << "\n";
    }
    for (const auto& n : r.notes) std::cout << "  note  " << n << "\n";
    std::cout << "elapsed : " << std::fixed << std::setprecision(3) << r.seconds
              << "s\n"
              << "result  : " << (r.passed ? "pass" : "FAIL") << "\n";

    if (!a.report.empty()) {
        nlohmann::json j;
        j["tool_version"] = kToolVersion;
        j["suite"] = r.suite;
        j["seed"] = a.seed;
        j["trials"] = a.trials;
        j["passed"] = r.passed;
        j["seconds"] = r.seconds;
        nlohmann::json props = nlohmann::json::array();
        for (const auto& p : r.properties) {
            nlohmann::json pj;
            pj["name"] = p.name;
            pj["value"] = p.value;
            if (p.limit == p.limit) pj["limit"] = p.limit;  // NaN = report-only
            pj["ok"] = p.ok;
            props.push_back(std::move(pj));
        }
        j["properties"] = std::move(props);
        j["notes"] = r.notes;
        std::ofstream f(a.report);
        if (!f) throw ParseError("cannot write " + a.report);
        f << j.dump(2) << "\n";
    }
    return r.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolVersion) +
                 ": separability analysis for bipartite states via "
                 "measure-and-prepare channels"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    bool seed_given = false;
    std::uint64_t seed_opt = 0;

    GenArgs gen;
    CLI::App* cgen = app.add_subcommand(
        "gen", "generate a state file (stdout unless --out)");
    cgen->add_option("spec", gen.spec,
                     "bell | maxent d | maxent-unnormalized d | "
                     "random-separable dA dB k | random-density d | "
                     "depolarized-maxent d epsilon | eq22-random | eq55")
        ->required()
        ->expected(-1);
    cgen->add_option("--out", gen.out, "output file (default stdout)");
    cgen->add_option("--cert", gen.cert,
                     "also write the generating decomposition (random-separable)");
    cgen->add_option("--seed", seed_opt, "PRNG seed (default QSEP_SEED, then 42)")
        ->each([&](const std::string&) { seed_given = true; });

    CheckArgs chk;
    CLI::App* ccheck = app.add_subcommand(
        "check", "run one separability criterion on an input state");
    ccheck->add_option("criterion", chk.criterion,
                       "corollary1 | blocks-psd | corollary2 | ppt | oracle | "
                       "basis-reduction | depolarizing-2q | isotropic")
        ->required();
    ccheck->add_option("input", chk.input,
                       "state file (optional only for isotropic with --d)");
    ccheck->add_option("--epsilon", chk.epsilon, "noise level")
        ->each([&](const std::string&) { chk.epsilon_given = true; });
    ccheck->add_option("--d", chk.d, "local dimension for isotropic without an input");
    ccheck->add_option("--basis", chk.basis,
                       "basis-reduction basis: computational | paper-qutrit | file");
    ccheck->add_option("--trials", chk.trials, "corollary2 sample count (default 200)");
    ccheck->add_option("--seed", seed_opt, "PRNG seed (default QSEP_SEED, then 42)")
        ->each([&](const std::string&) { seed_given = true; });
    ccheck->add_option("--report", chk.report, "write the verdict as JSON");
    ccheck->add_option("--cert", chk.cert_out,
                       "write the separability certificate when one is produced");

    ChannelArgs chn;
    CLI::App* cchan = app.add_subcommand(
        "channel", "apply a channel construction to a state or decomposition");
    cchan->add_option("kind", chn.kind, "depolarize | wavepacket | from-decomposition")
        ->required();
    cchan->add_option("input", chn.input,
                      "state file (depolarize, wavepacket) or decomposition file "
                      "(from-decomposition)")
        ->required();
    cchan->add_option("--epsilon", chn.epsilon, "noise level (depolarize)")
        ->each([&](const std::string&) { chn.epsilon_given = true; });
    cchan->add_option("--basis", chn.basis,
                      "pinching basis: computational | paper-qutrit | file");
    cchan->add_option("--decomposition", chn.decomposition_out,
                      "write the pinched state's product decomposition (wavepacket)");
    cchan->add_flag("--normalized", chn.normalized,
                    "use the trace-matched channel variant and normalized input");
    cchan->add_option("--apply-to", chn.apply_to,
                      "apply the bare map to this single-system state instead of "
                      "reconstructing through id (x) channel");
    cchan->add_option("--out", chn.out, "output file (default stdout)");

    VerifyArgs ver;
    CLI::App* cver = app.add_subcommand("verify", "run a reproduction suite");
    cver->add_option("suite", ver.suite,
                     "theorem1 | qutrit-closed-form | braunstein | thresholds | "
                     "soundness-sweep")
        ->required();
    cver->add_option("--trials", ver.trials, "trial count (0 = suite default)");
    cver->add_option("--seed", seed_opt, "PRNG seed (default QSEP_SEED, then 42)")
        ->each([&](const std::string&) { seed_given = true; });
    cver->add_flag("--serial", ver.serial, "run trials on a single worker");
    cver->add_option("--report", ver.report, "write the summary as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const std::uint64_t seed = seed_given ? seed_opt : env_seed();
        gen.seed = seed;
        chk.seed = seed;
        ver.seed = seed;
        if (cgen->parsed()) return run_gen(gen);
        if (ccheck->parsed()) return run_check(chk);
        if (cchan->parsed()) return run_channel(chn);
        if (cver->parsed()) return run_verify(ver);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
