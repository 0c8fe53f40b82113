#include "bellfield/wick.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bellfield/quadrature.hpp"

namespace bellfield {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int rounded_order(double estimate, int lo, int hi) {
    int n = static_cast<int>(estimate);
    n = ((n + 15) / 16) * 16;  // bound the cached-rule set
    return std::clamp(n, lo, hi);
}

// orthonormal frame with e3 = axis (or z if axis ~ 0)
struct Frame {
    Vec3 e1, e2, e3;
};

Frame make_frame(const Vec3& axis) {
    Frame f;
    const double n = norm(axis);
    f.e3 = n > 1e-14 ? axis * (1.0 / n) : Vec3{0, 0, 1};
    const Vec3 trial = std::abs(f.e3.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    const Vec3 t = trial - f.e3 * dot(trial, f.e3);
    f.e1 = t * (1.0 / norm(t));
    f.e2 = {f.e3.y * f.e1.z - f.e3.z * f.e1.y,
            f.e3.z * f.e1.x - f.e3.x * f.e1.z,
            f.e3.x * f.e1.y - f.e3.y * f.e1.x};
    return f;
}

std::size_t g_max_factors = 12;

using PairMatrix = std::vector<std::vector<cplx>>;

// recursion: pair the first unpaired position with each later one
cplx pairing_sum(const PairMatrix& c, std::vector<int>& open,
                 std::uint64_t& leaves) {
    if (open.empty()) {
        ++leaves;
        return 1.0;
    }
    const int first = open.front();
    cplx total = 0.0;
    for (std::size_t j = 1; j < open.size(); ++j) {
        const int partner = open[j];
        std::vector<int> rest;
        rest.reserve(open.size() - 2);
        for (std::size_t k = 1; k < open.size(); ++k)
            if (k != j) rest.push_back(open[k]);
        total += c[first][partner] * pairing_sum(c, rest, leaves);
    }
    return total;
}

}  // namespace

cplx contraction(const OnShellAmplitude& u, const OnShellAmplitude& v,
                 const Mass& mi) {
    if (!(u.width > 0.0) || !(v.width > 0.0))
        throw std::domain_error("contraction: packet width must be > 0");
    const double m = mi.value;
    const Vec3 d = u.position - v.position;  // phase e^{i k . d}
    const double au = 1.0 / (4.0 * u.width * u.width);
    const double av = 1.0 / (4.0 * v.width * v.width);
    const double a = au + av;
    const Vec3 center = (u.momentum * au + v.momentum * av) * (1.0 / a);
    const double kmax = norm(center) + std::sqrt(40.0 / a);
    const double dn = norm(d);

    const int nk = rounded_order(48.0 + 0.8 * kmax * dn, 48, 512);
    const int nth = rounded_order(48.0 + 0.8 * kmax * dn, 48, 512);
    const int nphi = 48;

    const Frame fr = make_frame(d);
    const double ku3 = dot(u.momentum, fr.e3), ku1 = dot(u.momentum, fr.e1),
                 ku2 = dot(u.momentum, fr.e2);
    const double kv3 = dot(v.momentum, fr.e3), kv1 = dot(v.momentum, fr.e1),
                 kv2 = dot(v.momentum, fr.e2);
    const double ku_sq = norm2(u.momentum), kv_sq = norm2(v.momentum);

    const auto& rk = gauss_legendre(nk);
    const auto& rt = gauss_legendre(nth);
    const auto& rp = gauss_legendre(nphi);

    cplx total = 0.0;
    for (int ik = 0; ik < nk; ++ik) {
        const double k = 0.5 * kmax * (rk.nodes[ik] + 1.0);
        const double wk = 0.5 * kmax * rk.weights[ik];
        const double omega = std::sqrt(k * k + m * m);
        const double radial = wk * k * k / (2.0 * omega);
        for (int it = 0; it < nth; ++it) {
            const double mu = rt.nodes[it];
            const double wt = rt.weights[it];
            const double st = std::sqrt(1.0 - mu * mu);
            const double phase = k * dn * mu;
            const cplx osc{std::cos(phase), std::sin(phase)};
            cplx phi_sum = 0.0;
            for (int ip = 0; ip < nphi; ++ip) {
                const double phi =
                    0.5 * kTwoPi * (rp.nodes[ip] + 1.0);
                const double wp = 0.5 * kTwoPi * rp.weights[ip];
                const double c1 = st * std::cos(phi), c2 = st * std::sin(phi);
                // k . k0 for each packet in the d-aligned frame
                const double kku = k * (mu * ku3 + c1 * ku1 + c2 * ku2);
                const double kkv = k * (mu * kv3 + c1 * kv1 + c2 * kv2);
                const double expo = -au * (k * k - 2.0 * kku + ku_sq) -
                                    av * (k * k - 2.0 * kkv + kv_sq);
                phi_sum += wp * std::exp(expo);
            }
            total += radial * wt * osc * phi_sum;
        }
    }
    return u.norm * v.norm * total;
}

OnShellAmplitude normalized(OnShellAmplitude u, const Mass& m) {
    u.norm = 1.0;
    const double c = contraction(u, u, m).real();
    if (!(c > 0.0))
        throw std::runtime_error("normalized: non-positive self-contraction");
    u.norm = 1.0 / std::sqrt(c);
    return u;
}

FieldMonomial FieldMonomial::reversed() const {
    std::vector<OnShellAmplitude> f(factors_.rbegin(), factors_.rend());
    return FieldMonomial(std::move(f));
}

FieldMonomial FieldMonomial::concat(const FieldMonomial& other) const {
    std::vector<OnShellAmplitude> f = factors_;
    f.insert(f.end(), other.factors_.begin(), other.factors_.end());
    return FieldMonomial(std::move(f));
}

FieldMonomial translate(const FieldMonomial& mono, const Vec3& l) {
    std::vector<OnShellAmplitude> f;
    f.reserve(mono.size());
    for (const auto& u : mono.factors()) f.push_back(u.translated(l));
    return FieldMonomial(std::move(f));
}

std::size_t wick_max_factors() { return g_max_factors; }
void set_wick_max_factors(std::size_t n) { g_max_factors = n; }

cplx vacuum_expectation(const FieldMonomial& mono, const Mass& m,
                        std::uint64_t* pairings_visited) {
    const std::size_t n = mono.size();
    if (n > g_max_factors)
        throw std::length_error("vacuum_expectation: monomial exceeds factor limit");
    if (pairings_visited) *pairings_visited = 0;
    if (n == 0) return 1.0;
    if (n % 2 == 1) return 0.0;

    const auto& f = mono.factors();
    PairMatrix c(n, std::vector<cplx>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            c[i][j] = contraction(f[i], f[j], m);

    std::vector<int> open(n);
    for (std::size_t i = 0; i < n; ++i) open[i] = static_cast<int>(i);
    std::uint64_t leaves = 0;
    const cplx result = pairing_sum(c, open, leaves);
    if (pairings_visited) *pairings_visited = leaves;
    return result;
}

double state_norm2(const PolynomialState& state, const Mass& m) {
    const cplx n2 =
        vacuum_expectation(state.creator.reversed().concat(state.creator), m);
    if (!(n2.real() > 0.0))
        throw std::runtime_error("state_norm2: creator annihilates the vacuum");
    return n2.real();
}

cplx state_expectation(const PolynomialState& state, const FieldMonomial& a,
                       const Mass& m) {
    const FieldMonomial rev = state.creator.reversed();
    const FieldMonomial full = rev.concat(a).concat(state.creator);
    if (full.size() > g_max_factors)
        throw std::length_error("state_expectation: combined monomial exceeds factor limit");
    return vacuum_expectation(full, m) / state_norm2(state, m);
}

double correlation_gap(const PolynomialState& state, const FieldMonomial& a,
                       const FieldMonomial& b, const Vec3& l, const Mass& m) {
    const FieldMonomial al = translate(a, l);
    const cplx joint = state_expectation(state, al.concat(b), m);
    const cplx split = state_expectation(state, al, m) * state_expectation(state, b, m);
    return std::abs(joint - split);
}

}  // namespace bellfield
