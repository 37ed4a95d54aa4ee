#include <algorithm>
#include <cmath>
#include <numbers>

#include "ncairy/airy.hpp"
#include "ncairy/ncp2.hpp"
#include "ncairy/quadrature.hpp"

namespace ncairy {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

struct Unscaled {
    double ai, aip, bi, bip;
};

// Ai, Bi recovered from scaled values so the growing and decaying factors
// are each formed by one exponential.
Unscaled airy_unscaled(double x) {
    AiryEval e = airy_scaled(x);
    double dec = std::exp(-e.zeta);
    double gro = std::exp(e.zeta);
    return {e.ai * dec, e.aip * dec, e.bi * gro, e.bip * gro};
}

} // namespace

HMTail::HMTail(const CouplingMatrix& c, std::vector<double> delta, double s0, double s_max, int n_tail, double tol)
    : r_(delta.size()), c_(c), delta_(std::move(delta)), s0_(s0), s_max_(s_max) {
    if (c_.size() != r_) throw DomainError("hm_tail_picard: C and delta sizes differ");
    if (n_tail < 64) throw DomainError("hm_tail_picard: n_tail must be at least 64");
    if (!(s_max > s0)) throw DomainError("hm_tail_picard: need S_max > S0");
    double m = 0.0;
    for (double d : delta_) m = std::max(m, std::abs(d));
    if (s0 < 1.0 + m) throw DomainError("hm_tail_picard: S0 must be at least 1 + max|delta|");
    if (2.0 * s_max + 2.0 * m > 100.0) throw DomainError("hm_tail_picard: S_max too large for Bi in double range");

    panels_ = static_cast<std::size_t>((n_tail + kPanelNodes - 1) / kPanelNodes);
    width_ = (s_max_ - s0_) / static_cast<double>(panels_);
    QuadratureRule ref = gauss_legendre(kPanelNodes);
    ref_nodes_ = ref.nodes;
    ref_weights_ = ref.weights;
    bary_.assign(kPanelNodes, 1.0);
    for (int j = 0; j < kPanelNodes; ++j)
        for (int k = 0; k < kPanelNodes; ++k)
            if (k != j) bary_[j] /= (ref_nodes_[j] - ref_nodes_[k]);

    std::size_t n = panels_ * kPanelNodes;
    nodes_.resize(n);
    weights_.resize(n);
    for (std::size_t p = 0; p < panels_; ++p) {
        double a = s0_ + width_ * static_cast<double>(p);
        for (int q = 0; q < kPanelNodes; ++q) {
            nodes_[p * kPanelNodes + q] = a + 0.5 * width_ * (1.0 + ref_nodes_[q]);
            weights_[p * kPanelNodes + q] = 0.5 * width_ * ref_weights_[q];
        }
    }
    node_partial_.resize(n);
    for (std::size_t i = 0; i < n; ++i) node_partial_[i] = partial_weights(nodes_[i], i / kPanelNodes);

    for (std::size_t k = 0; k < r_; ++k)
        for (std::size_t l = 0; l < r_; ++l) {
            Entry e;
            e.k = k;
            e.l = l;
            e.d = delta_[k] + delta_[l];
            e.c = c_(k, l);
            e.ai.resize(n);
            e.aip.resize(n);
            e.bi.resize(n);
            e.bip.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                Unscaled u = airy_unscaled(2.0 * nodes_[i] + e.d);
                e.ai[i] = u.ai;
                e.aip[i] = u.aip;
                e.bi[i] = u.bi;
                e.bip[i] = u.bip;
            }
            e.g_bi.assign(n, 0.0);
            e.g_ai.assign(n, 0.0);
            e.suffix_bi.assign(panels_ + 1, 0.0);
            e.suffix_ai.assign(panels_ + 1, 0.0);
            entries_.push_back(std::move(e));
        }

    beta_.assign(n, ComplexMatrix(r_, r_));
    dbeta_.assign(n, ComplexMatrix(r_, r_));
    for (const Entry& e : entries_)
        for (std::size_t i = 0; i < n; ++i) beta_[i](e.k, e.l) = -e.c * e.ai[i];

    double prev_change = 0.0;
    int growth = 0;
    for (sweeps_ = 1;; ++sweeps_) {
        update_integrals();
        double change = 0.0;
        for (const Entry& e : entries_)
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t p = i / kPanelNodes;
                const std::vector<double>& pw = node_partial_[i];
                cplx ib = e.suffix_bi[p + 1];
                cplx ia = e.suffix_ai[p + 1];
                for (int q = 0; q < kPanelNodes; ++q) {
                    ib += pw[q] * e.g_bi[p * kPanelNodes + q];
                    ia += pw[q] * e.g_ai[p * kPanelNodes + q];
                }
                cplx nb = -e.c * e.ai[i] + kFourPi * (e.ai[i] * ib - e.bi[i] * ia);
                cplx nd = -2.0 * e.c * e.aip[i] + 2.0 * kFourPi * (e.aip[i] * ib - e.bip[i] * ia);
                change = std::max(change, std::abs(nb - beta_[i](e.k, e.l)));
                beta_[i](e.k, e.l) = nb;
                dbeta_[i](e.k, e.l) = nd;
            }
        if (change <= tol) break;
        if (sweeps_ > 1 && change > prev_change) {
            if (++growth >= 3) throw NoContraction("hm_tail_picard: Picard change grew for 3 sweeps; raise S0");
        } else {
            growth = 0;
        }
        if (sweeps_ >= 500) throw ConvergenceFailure("hm_tail_picard: no convergence in 500 sweeps");
        prev_change = change;
    }
    update_integrals();

    beta2_beyond_ = ComplexMatrix(r_, r_);
    for (std::size_t k = 0; k < r_; ++k)
        for (std::size_t l = 0; l < r_; ++l)
            for (std::size_t a = 0; a < r_; ++a) {
                cplx cc = c_(k, a) * c_(a, l);
                if (cc == cplx(0.0)) continue;
                double x1 = 2.0 * s_max_ + delta_[k] + delta_[a];
                double x2 = 2.0 * s_max_ + delta_[a] + delta_[l];
                beta2_beyond_(k, l) += 0.5 * cc * scalar_airy_kernel(x1, x2);
            }
}

std::size_t HMTail::panel_of(double T) const {
    double u = (T - s0_) / width_;
    if (u <= 0.0) return 0;
    std::size_t p = static_cast<std::size_t>(u);
    return std::min(p, panels_ - 1);
}

std::vector<double> HMTail::partial_weights(double T, std::size_t panel) const {
    double a = s0_ + width_ * static_cast<double>(panel);
    double u = 2.0 * (T - a) / width_ - 1.0;
    u = std::clamp(u, -1.0, 1.0);
    std::vector<double> w(kPanelNodes, 0.0);
    double len = 0.5 * (1.0 - u);
    if (len == 0.0) return w;
    for (int q = 0; q < kPanelNodes; ++q) {
        double tau = u + len * (1.0 + ref_nodes_[q]);
        double om = len * ref_weights_[q];
        int hit = -1;
        double denom = 0.0;
        for (int j = 0; j < kPanelNodes; ++j) {
            double diff = tau - ref_nodes_[j];
            if (diff == 0.0) {
                hit = j;
                break;
            }
            denom += bary_[j] / diff;
        }
        if (hit >= 0) {
            w[hit] += om;
            continue;
        }
        for (int j = 0; j < kPanelNodes; ++j) w[j] += om * (bary_[j] / (tau - ref_nodes_[j])) / denom;
    }
    for (double& v : w) v *= 0.5 * width_;
    return w;
}

void HMTail::update_integrals() {
    std::size_t n = nodes_.size();
    std::vector<ComplexMatrix> cube(n);
    for (std::size_t i = 0; i < n; ++i) cube[i] = beta_[i] * beta_[i] * beta_[i];
    for (Entry& e : entries_) {
        for (std::size_t i = 0; i < n; ++i) {
            cplx f = cube[i](e.k, e.l);
            e.g_bi[i] = e.bi[i] * f;
            e.g_ai[i] = e.ai[i] * f;
        }
        e.suffix_bi[panels_] = 0.0;
        e.suffix_ai[panels_] = 0.0;
        for (std::size_t p = panels_; p-- > 0;) {
            cplx sb = 0.0;
            cplx sa = 0.0;
            for (int q = 0; q < kPanelNodes; ++q) {
                std::size_t i = p * kPanelNodes + q;
                sb += weights_[i] * e.g_bi[i];
                sa += weights_[i] * e.g_ai[i];
            }
            e.suffix_bi[p] = e.suffix_bi[p + 1] + sb;
            e.suffix_ai[p] = e.suffix_ai[p + 1] + sa;
        }
    }
}

void HMTail::values_at(double T, ComplexMatrix* beta, ComplexMatrix* dbeta) const {
    if (T < s0_ - 1e-12 * std::max(1.0, std::abs(s0_))) throw OutOfRange("HMTail: point below the tail start");
    if (beta) *beta = ComplexMatrix(r_, r_);
    if (dbeta) *dbeta = ComplexMatrix(r_, r_);
    bool beyond = T >= s_max_;
    std::size_t p = panel_of(T);
    std::vector<double> pw;
    if (!beyond) pw = partial_weights(T, p);
    for (const Entry& e : entries_) {
        Unscaled u = airy_unscaled(2.0 * T + e.d);
        cplx ib = 0.0;
        cplx ia = 0.0;
        if (!beyond) {
            ib = e.suffix_bi[p + 1];
            ia = e.suffix_ai[p + 1];
            for (int q = 0; q < kPanelNodes; ++q) {
                ib += pw[q] * e.g_bi[p * kPanelNodes + q];
                ia += pw[q] * e.g_ai[p * kPanelNodes + q];
            }
        }
        if (beta) (*beta)(e.k, e.l) = -e.c * u.ai + kFourPi * (u.ai * ib - u.bi * ia);
        if (dbeta) (*dbeta)(e.k, e.l) = -2.0 * e.c * u.aip + 2.0 * kFourPi * (u.aip * ib - u.bip * ia);
    }
}

ComplexMatrix HMTail::beta(double T) const {
    ComplexMatrix b;
    values_at(T, &b, nullptr);
    return b;
}

ComplexMatrix HMTail::dbeta(double T) const {
    ComplexMatrix d;
    values_at(T, nullptr, &d);
    return d;
}

ComplexMatrix HMTail::integrate(double T, const std::vector<ComplexMatrix>& samples) const {
    ComplexMatrix out(samples.front().rows(), samples.front().cols());
    if (T >= s_max_) return out;
    if (T < s0_ - 1e-12 * std::max(1.0, std::abs(s0_))) throw OutOfRange("HMTail: point below the tail start");
    std::size_t p = panel_of(T);
    for (std::size_t i = (p + 1) * kPanelNodes; i < nodes_.size(); ++i) {
        ComplexMatrix term = samples[i];
        term *= weights_[i];
        out += term;
    }
    std::vector<double> pw = partial_weights(T, p);
    for (int q = 0; q < kPanelNodes; ++q) {
        ComplexMatrix term = samples[p * kPanelNodes + q];
        term *= pw[q];
        out += term;
    }
    return out;
}

std::shared_ptr<const HMTail> hm_tail_picard(const CouplingMatrix& c, const std::vector<double>& delta, double s0,
                                             double s_max, int n_tail, double tol) {
    return std::make_shared<const HMTail>(c, delta, s0, s_max, n_tail, tol);
}

} // namespace ncairy
