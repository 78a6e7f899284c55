#include "jf/group.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace jf {

namespace {

using ivec = std::array<std::int64_t, 2>;

ivec reflect(int w, const ivec& a) {
    return {w < 0 ? -a[0] : a[0], a[1]};
}

ivec add(const ivec& a, const ivec& b) { return {a[0] + b[0], a[1] + b[1]}; }

struct Translation {
    ivec lambda;
    ivec mu;
    std::int64_t k;
};

// Conjugation of a translation by gamma = (a,b,c,d):
//   gamma t gamma^{-1} = t'  with
//   lambda' = d lambda - c mu,  mu' = a mu - b lambda,
//   k' = k + (bd/2)<lambda,lambda> - bc<lambda,mu> + (ac/2)<mu,mu>.
// <.,.> is even-valued so the halves stay integral.
Translation ad_gamma(const std::array<std::int64_t, 4>& g, const Translation& t) {
    const std::int64_t a = g[0], b = g[1], c = g[2], d = g[3];
    Translation r;
    r.lambda = {d * t.lambda[0] - c * t.mu[0], d * t.lambda[1] - c * t.mu[1]};
    r.mu = {a * t.mu[0] - b * t.lambda[0], a * t.mu[1] - b * t.lambda[1]};
    r.k = t.k + b * d * pairing(t.lambda, t.lambda) / 2
              - b * c * pairing(t.lambda, t.mu)
              + a * c * pairing(t.mu, t.mu) / 2;
    return r;
}

// Composition of translations as maps: the u-shift picks up -<lambda, mu~>.
Translation mul(const Translation& s, const Translation& t) {
    return {add(s.lambda, t.lambda), add(s.mu, t.mu),
            s.k + t.k - pairing(s.lambda, t.mu)};
}

}  // namespace

void GroupElement::validate() const {
    if (w != 1 && w != -1) throw std::invalid_argument("GroupElement: w must be +1 or -1");
    if (gamma[0] * gamma[3] - gamma[1] * gamma[2] != 1) {
        throw std::invalid_argument("GroupElement: gamma must have determinant 1");
    }
}

cplx quadratic_form(cplx v0, cplx v2) {
    return 2.0 * v0 * v0 - 2.0 * v2 * v2;
}

std::int64_t pairing(const ivec& a, const ivec& b) {
    return 2 * a[0] * b[0] - 2 * a[1] * b[1];
}

DomainPoint act(const GroupElement& g, const DomainPoint& p) {
    g.validate();
    const double a = static_cast<double>(g.gamma[0]);
    const double b = static_cast<double>(g.gamma[1]);
    const double c = static_cast<double>(g.gamma[2]);
    const double d = static_cast<double>(g.gamma[3]);

    const cplx cd = c * p.tau + d;
    cplx u = p.u + c * quadratic_form(p.v0, p.v2) / (2.0 * cd);
    cplx v0 = p.v0 / cd;
    cplx v2 = p.v2 / cd;
    cplx tau = (a * p.tau + b) / cd;
    if (!(tau.imag() > 0.0)) throw DomainError("act: image violates Im(tau) > 0");

    const double l0 = static_cast<double>(g.lambda[0]);
    const double l2 = static_cast<double>(g.lambda[1]);
    const cplx lv = 2.0 * l0 * v0 - 2.0 * l2 * v2;
    const double ll = static_cast<double>(pairing(g.lambda, g.lambda));
    u = u - lv - 0.5 * ll * tau + static_cast<double>(g.k);
    v0 += l0 * tau + static_cast<double>(g.mu[0]);
    v2 += l2 * tau + static_cast<double>(g.mu[1]);

    if (g.w < 0) v0 = -v0;
    return {u, v0, v2, tau};
}

GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
    g1.validate();
    g2.validate();
    // g1 g2 = w1 t1 G1 . w2 t2 G2
    //       = (w1 w2) . (w2^{-1} t1 w2) . Ad_{G1}(t2) . (G1 G2)
    const Translation t1w{reflect(g2.w, g1.lambda), reflect(g2.w, g1.mu), g1.k};
    const Translation t2c = ad_gamma(g1.gamma, {g2.lambda, g2.mu, g2.k});
    const Translation t = mul(t1w, t2c);

    GroupElement r;
    r.w = g1.w * g2.w;
    r.lambda = t.lambda;
    r.mu = t.mu;
    r.k = t.k;
    const auto& A = g1.gamma;
    const auto& B = g2.gamma;
    r.gamma = {A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3],
               A[2] * B[0] + A[3] * B[2], A[2] * B[1] + A[3] * B[3]};
    return r;
}

GroupElement inverse(const GroupElement& g) {
    g.validate();
    // g^{-1} = G^{-1} t^{-1} w = w . Ad_{G^{-1}}(w t^{-1} w) . G^{-1}
    const std::array<std::int64_t, 4> ginv{g.gamma[3], -g.gamma[1], -g.gamma[2], g.gamma[0]};
    Translation tinv{{-g.lambda[0], -g.lambda[1]},
                     {-g.mu[0], -g.mu[1]},
                     -g.k - pairing(g.lambda, g.mu)};
    tinv.lambda = reflect(g.w, tinv.lambda);
    tinv.mu = reflect(g.w, tinv.mu);
    const Translation t = ad_gamma(ginv, tinv);

    GroupElement r;
    r.w = g.w;
    r.lambda = t.lambda;
    r.mu = t.mu;
    r.k = t.k;
    r.gamma = ginv;
    return r;
}

cplx conformal_factor(const GroupElement& g, const DomainPoint& p) {
    g.validate();
    const cplx cd = static_cast<double>(g.gamma[2]) * p.tau + static_cast<double>(g.gamma[3]);
    return 1.0 / (cd * cd);
}

std::string to_json(const GroupElement& g) {
    nlohmann::json j;
    j["w"] = g.w;
    j["lambda"] = {g.lambda[0], g.lambda[1]};
    j["mu"] = {g.mu[0], g.mu[1]};
    j["k"] = g.k;
    j["gamma"] = {g.gamma[0], g.gamma[1], g.gamma[2], g.gamma[3]};
    return j.dump();
}

GroupElement group_element_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    GroupElement g;
    g.w = j.at("w").get<int>();
    g.lambda = {j.at("lambda").at(0).get<std::int64_t>(), j.at("lambda").at(1).get<std::int64_t>()};
    g.mu = {j.at("mu").at(0).get<std::int64_t>(), j.at("mu").at(1).get<std::int64_t>()};
    g.k = j.at("k").get<std::int64_t>();
    g.gamma = {j.at("gamma").at(0).get<std::int64_t>(), j.at("gamma").at(1).get<std::int64_t>(),
               j.at("gamma").at(2).get<std::int64_t>(), j.at("gamma").at(3).get<std::int64_t>()};
    g.validate();
    return g;
}

}  // namespace jf
