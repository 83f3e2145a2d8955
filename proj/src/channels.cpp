#include "qsep/channels.hpp"

#include <cmath>

#include "qsep/errors.hpp"

namespace qsep {

const char* to_string(TracePreservation t) {
    switch (t) {
        case TracePreservation::Preserving: return "preserving";
        case TracePreservation::SubPreserving: return "sub-preserving";
        case TracePreservation::Invalid: return "invalid";
    }
    return "?";
}

HolevoChannel::HolevoChannel(int din, int dout, std::vector<Pair> pairs)
    : din_(din), dout_(dout), pairs_(std::move(pairs)) {
    if (din_ < 1 || dout_ < 1) throw BadDimension("channel dimensions must be positive");
    for (const auto& [r, f] : pairs_) {
        if (r.dim() != dout_) throw DimensionMismatch("prepared state has wrong dimension");
        if (f.dim() != din_) throw DimensionMismatch("effect has wrong dimension");
        const double hr = hermiticity_residual(r);
        if (hr > kTauHerm) throw InvariantViolation("prepared-state-hermiticity", hr);
        const double rlo = min_eigenvalue(r);
        if (rlo < -kTauPsd) throw InvariantViolation("prepared-state-positivity", -rlo);
        const double rt = std::abs(trace(r).real() - 1.0);
        if (rt > 1e-9) throw InvariantViolation("prepared-state-trace", rt);
        const double hf = hermiticity_residual(f);
        if (hf > kTauHerm) throw InvariantViolation("effect-hermiticity", hf);
        const double flo = min_eigenvalue(f);
        if (flo < -kTauPsd) throw InvariantViolation("effect-positivity", -flo);
    }
}

KrausOperator KrausOperator::from_square(const ComplexMatrix& m) {
    KrausOperator k(m.dim(), m.dim());
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) k(r, c) = m(r, c);
    return k;
}

KrausChannel::KrausChannel(int din, int dout, std::vector<KrausOperator> ops)
    : din_(din), dout_(dout), ops_(std::move(ops)) {
    if (din_ < 1 || dout_ < 1) throw BadDimension("channel dimensions must be positive");
    if (ops_.empty()) throw InvariantViolation("nonempty-operators", 0.0);
    for (const auto& e : ops_)
        if (e.rows != dout_ || e.cols != din_)
            throw DimensionMismatch("Kraus operator must be dout x din");
}

DepolarizingChannel::DepolarizingChannel(int d, double epsilon)
    : d_(d), epsilon_(epsilon) {
    if (d_ < 1) throw BadDimension("need d >= 1");
    if (!(epsilon_ >= 0.0 && epsilon_ <= 1.0))
        throw InvariantViolation("epsilon-range", epsilon_);
}

ComplexMatrix holevo_apply(const HolevoChannel& ch, const ComplexMatrix& sigma) {
    if (sigma.dim() != ch.din()) throw DimensionMismatch("input has wrong dimension");
    ComplexMatrix out(ch.dout());
    for (const auto& [r, f] : ch.pairs()) {
        Complex w = 0.0;
        for (int m = 0; m < f.dim(); ++m)
            for (int n = 0; n < f.dim(); ++n) w += f(m, n) * sigma(n, m);
        for (int i = 0; i < out.dim(); ++i)
            for (int j = 0; j < out.dim(); ++j) out(i, j) += w * r(i, j);
    }
    return out;
}

ComplexMatrix kraus_apply(const KrausChannel& ch, const ComplexMatrix& sigma) {
    if (sigma.dim() != ch.din()) throw DimensionMismatch("input has wrong dimension");
    ComplexMatrix out(ch.dout());
    for (const auto& e : ch.operators()) {
        // tmp = E sigma, out += tmp E^dagger
        std::vector<Complex> tmp(static_cast<size_t>(e.rows) * e.cols);
        for (int r = 0; r < e.rows; ++r)
            for (int n = 0; n < e.cols; ++n) {
                Complex s = 0.0;
                for (int m = 0; m < e.cols; ++m) s += e(r, m) * sigma(m, n);
                tmp[static_cast<size_t>(r) * e.cols + n] = s;
            }
        for (int r = 0; r < e.rows; ++r)
            for (int c = 0; c < e.rows; ++c) {
                Complex s = 0.0;
                for (int n = 0; n < e.cols; ++n)
                    s += tmp[static_cast<size_t>(r) * e.cols + n] * std::conj(e(c, n));
                out(r, c) += s;
            }
    }
    return out;
}

ComplexMatrix depolarize(const DepolarizingChannel& ch, const ComplexMatrix& rho) {
    if (rho.dim() != ch.d()) throw DimensionMismatch("input has wrong dimension");
    const Complex tr = trace(rho);
    const double eps = ch.epsilon();
    ComplexMatrix out(ch.d());
    for (int r = 0; r < ch.d(); ++r)
        for (int c = 0; c < ch.d(); ++c) {
            out(r, c) = eps * rho(r, c);
            if (r == c) out(r, c) += (1.0 - eps) * tr / static_cast<double>(ch.d());
        }
    return out;
}

namespace {

TracePreservation classify_completeness(const ComplexMatrix& sum) {
    const int d = sum.dim();
    ComplexMatrix slack(d);  // I - sum, hermitized
    double dev = 0.0;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            const Complex h = 0.5 * (sum(r, c) + std::conj(sum(c, r)));
            const Complex target = (r == c) ? Complex(1.0) : Complex(0.0);
            slack(r, c) = target - h;
            dev = std::max(dev, std::abs(h - target));
        }
    if (dev <= 1e-9) return TracePreservation::Preserving;
    return min_eigenvalue(slack) >= -kTauPsd ? TracePreservation::SubPreserving
                                             : TracePreservation::Invalid;
}

}  // namespace

TracePreservation trace_preservation(const HolevoChannel& ch) {
    ComplexMatrix sum(ch.din());
    for (const auto& [r, f] : ch.pairs()) sum += f;
    return classify_completeness(sum);
}

TracePreservation trace_preservation(const KrausChannel& ch) {
    ComplexMatrix sum(ch.din());
    for (const auto& e : ch.operators())
        for (int m = 0; m < e.cols; ++m)
            for (int n = 0; n < e.cols; ++n) {
                Complex s = 0.0;
                for (int r = 0; r < e.rows; ++r) s += std::conj(e(r, m)) * e(r, n);
                sum(m, n) += s;
            }
    return classify_completeness(sum);
}

ComplexMatrix apply_id_tensor(const HolevoChannel& ch, const ComplexMatrix& rho, int dA) {
    if (dA < 1) throw BadDimension("need dA >= 1");
    if (rho.dim() != dA * ch.din())
        throw DimensionMismatch("input dimension != dA * din");
    ComplexMatrix out(dA * ch.dout());
    ComplexMatrix block(ch.din());
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j) {
            for (int m = 0; m < ch.din(); ++m)
                for (int n = 0; n < ch.din(); ++n)
                    block(m, n) = rho(i * ch.din() + m, j * ch.din() + n);
            const ComplexMatrix mapped = holevo_apply(ch, block);
            for (int m = 0; m < ch.dout(); ++m)
                for (int n = 0; n < ch.dout(); ++n)
                    out(i * ch.dout() + m, j * ch.dout() + n) = mapped(m, n);
        }
    return out;
}

namespace {

ComplexMatrix conj_projector(const PureState& s) {
    return outer(conjugate(s.vector()));
}

}  // namespace

HolevoChannel ebc_from_decomposition(const SeparableDecomposition& dec) {
    std::vector<HolevoChannel::Pair> pairs;
    pairs.reserve(dec.terms().size());
    for (const auto& t : dec.terms())
        pairs.emplace_back(outer(t.phi.vector()), scaled(conj_projector(t.psi), t.p));
    return HolevoChannel(dec.dA(), dec.dB(), std::move(pairs));
}

HolevoChannel normalized_ebc_from_decomposition(const SeparableDecomposition& dec) {
    const double dA = static_cast<double>(dec.dA());
    std::vector<HolevoChannel::Pair> pairs;
    pairs.reserve(dec.terms().size());
    for (const auto& t : dec.terms())
        pairs.emplace_back(outer(t.phi.vector()), scaled(conj_projector(t.psi), dA * t.p));
    return HolevoChannel(dec.dA(), dec.dB(), std::move(pairs));
}

HolevoChannel wavepacket_reduction(const std::vector<ComplexVector>& basis) {
    if (basis.empty()) throw IncompleteBasis("empty basis");
    const int d = basis.front().dim();
    if (static_cast<int>(basis.size()) != d)
        throw IncompleteBasis("got " + std::to_string(basis.size()) +
                              " vectors for dimension " + std::to_string(d));
    for (const auto& v : basis)
        if (v.dim() != d) throw DimensionMismatch("basis vectors have mixed dimensions");
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i; j < basis.size(); ++j) {
            const double target = (i == j) ? 1.0 : 0.0;
            if (std::abs(inner(basis[i], basis[j]) - target) > 1e-9)
                throw NotOrthonormal("vectors " + std::to_string(i) + " and " +
                                     std::to_string(j) + " fail orthonormality");
        }
    std::vector<HolevoChannel::Pair> pairs;
    pairs.reserve(basis.size());
    for (const auto& e : basis) {
        ComplexMatrix proj = outer(e);
        pairs.emplace_back(proj, proj);
    }
    return HolevoChannel(d, d, std::move(pairs));
}

}  // namespace qsep
