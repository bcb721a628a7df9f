#include "qes/models.hpp"

#include <cmath>

namespace qes {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::calogero_marchioro: return "calogero_marchioro";
        case ModelKind::novel_correlation: return "novel_correlation";
        case ModelKind::calogero_sutherland: return "calogero_sutherland";
        case ModelKind::reduced: return "reduced";
    }
    return "unknown";
}

SexticRecursion ReducedModel::recursion() const {
    if (!is_qes) {
        throw NotQESError("J = " + J.to_string() + " is not a positive integer; the sector is quasi-exactly solvable "
                          "only for J = 1, 2, 3, ...");
    }
    return SexticRecursion(alpha, beta, s(), static_cast<int>(round(J).to_long_double()));
}

Scalar a_from_F(const Scalar& F, const Scalar& gamma) {
    require_same_mode(F, gamma);
    if (F.sign() < 0) throw ModelError("F must be non-negative, got " + F.to_string());
    if (F.is_zero()) return F.like(0);
    if (gamma.sign() < 0) throw ModelError("a nonzero F requires gamma >= 0");
    return sqrt(gamma * gamma + F) - gamma;
}

JResult j_from_B(const Scalar& B, const Scalar& alpha, const Scalar& beta, const Scalar& a, const Scalar& gamma,
                 const ModelOptions& options) {
    if (beta.is_zero()) throw ModelError("beta = 0: J is undefined");
    JResult out;
    out.J = (alpha * alpha * 4 - B - beta * 8 * (a + gamma)) / (beta * 16);
    Scalar nearest = round(out.J);
    bool integral = out.J.is_exact()
                        ? out.J.is_integer()
                        : std::fabs(static_cast<double>((out.J - nearest).to_long_double())) < options.integer_tolerance;
    if (integral && nearest >= 1) {
        out.is_qes = true;
        out.integer = static_cast<long>(nearest.to_long_double());
    }
    return out;
}

Scalar b_from_J(const Scalar& J, const Scalar& alpha, const Scalar& beta, const Scalar& a, const Scalar& gamma) {
    return alpha * alpha * 4 - beta * 8 * (J * 2 + a + gamma);
}

Scalar lambda_D(int D, const Scalar& g) {
    const long shift = D - 2L;
    Scalar disc = g * 4 + shift * shift;
    if (disc.sign() < 0) throw ModelError("(D-2)^2 + 4g must be non-negative");
    return (sqrt(disc) - shift) / 2;
}

Scalar gamma_calogero_marchioro(int N, int D, const Scalar& lambda) {
    const long n = N;
    return (lambda * (n * (n - 1)) + (static_cast<long>(D) * (n - 1) - 2)) / 2;
}

Scalar delta_novel_correlation(int N, const Scalar& g) {
    const long n = N;
    return g * (n * (n - 1)) + (n - 1);
}

Scalar delta_calogero_sutherland(int N, const Scalar& g) {
    const long n = N;
    Scalar disc = g * 4 + 1;
    if (disc.sign() < 0) throw ModelError("1 + 4g must be non-negative");
    Scalar lambda = sqrt(disc) / 2;
    return (lambda * (n * (n - 1)) + (n - 2)) / 2;
}

namespace {

void require_particles(int N) {
    if (N < 2) throw ModelError("N must be at least 2, got " + std::to_string(N));
}

ReducedModel finish(Scalar gamma, const SexticCoefficients& radial, Provenance provenance,
                    const ModelOptions& options) {
    if (radial.B.has_value() == radial.J.has_value()) throw ModelError("exactly one of B and J must be given");
    if (radial.H.sign() <= 0) throw ModelError("H must be positive for the sextic sector");
    if (radial.F.sign() < 0) throw ModelError("F must be non-negative");
    require_same_mode(gamma, radial.F);
    require_same_mode(gamma, radial.C);
    require_same_mode(gamma, radial.H);

    ReducedModel m;
    m.gamma = std::move(gamma);
    m.a = a_from_F(radial.F, m.gamma);
    Scalar root_h = sqrt(radial.H);
    m.alpha = radial.C / (root_h * 4);
    m.beta = root_h / 4;
    m.C = radial.C;
    m.H = radial.H;
    m.F = radial.F;
    if (radial.B) {
        require_same_mode(m.gamma, *radial.B);
        m.B = *radial.B;
        JResult j = j_from_B(m.B, m.alpha, m.beta, m.a, m.gamma, options);
        m.J = j.J;
        m.is_qes = j.is_qes;
    } else {
        m.J = m.gamma.like(*radial.J);
        m.is_qes = *radial.J >= 1;
        m.B = b_from_J(m.J, m.alpha, m.beta, m.a, m.gamma);
    }
    provenance.values.emplace_back("gamma", m.gamma);
    provenance.values.emplace_back("a", m.a);
    provenance.values.emplace_back("alpha", m.alpha);
    provenance.values.emplace_back("beta", m.beta);
    provenance.values.emplace_back("J", m.J);
    provenance.values.emplace_back("B", m.B);
    m.provenance = std::move(provenance);
    return m;
}

}  // namespace

ReducedModel cm_reduce(const CalogeroMarchioroParams& p, const ModelOptions& options) {
    require_particles(p.N);
    if (p.D < 2) throw ModelError("D must be at least 2, got " + std::to_string(p.D));
    Scalar lambda = lambda_D(p.D, p.g);
    Scalar G = lambda * lambda;
    if (p.G) {
        require_same_mode(*p.G, G);
        Scalar diff = abs(*p.G - G);
        bool ok = G.is_exact() ? diff.is_zero()
                               : static_cast<double>(diff.to_long_double()) <=
                                     options.coupling_tolerance * std::max(1.0L, std::fabs(G.to_long_double()));
        if (!ok) {
            throw ModelError("G = " + p.G->to_string() + " is inconsistent with Lambda_D^2 = " + G.to_string() +
                             " for D = " + std::to_string(p.D) + ", g = " + p.g.to_string());
        }
    }
    Provenance prov{ModelKind::calogero_marchioro, {}};
    prov.values.emplace_back("N", p.g.like(p.N));
    prov.values.emplace_back("D", p.g.like(p.D));
    prov.values.emplace_back("g", p.g);
    prov.values.emplace_back("G", G);
    prov.values.emplace_back("Lambda_D", lambda);
    return finish(gamma_calogero_marchioro(p.N, p.D, lambda), p.radial, std::move(prov), options);
}

ReducedModel novel_reduce(const NovelCorrelationParams& p, const ModelOptions& options) {
    require_particles(p.N);
    if (p.g.sign() <= 0) throw ModelError("correlation exponent g must be positive");
    Provenance prov{ModelKind::novel_correlation, {}};
    prov.values.emplace_back("N", p.g.like(p.N));
    prov.values.emplace_back("g", p.g);
    prov.values.emplace_back("g1", p.g1());
    prov.values.emplace_back("g2", p.g2());
    return finish(delta_novel_correlation(p.N, p.g), p.radial, std::move(prov), options);
}

ReducedModel cs_reduce(const CalogeroSutherlandParams& p, const ModelOptions& options) {
    require_particles(p.N);
    Scalar disc = p.g * 4 + 1;
    if (disc.sign() < 0) throw ModelError("1 + 4g must be non-negative");
    Provenance prov{ModelKind::calogero_sutherland, {}};
    prov.values.emplace_back("N", p.g.like(p.N));
    prov.values.emplace_back("g", p.g);
    prov.values.emplace_back("lambda", sqrt(disc) / 2);
    return finish(delta_calogero_sutherland(p.N, p.g), p.radial, std::move(prov), options);
}

ReducedModel reduced_model(const Scalar& a, const Scalar& gamma, const Scalar& alpha, const Scalar& beta, long J) {
    require_same_mode(a, gamma);
    require_same_mode(a, alpha);
    require_same_mode(a, beta);
    if (beta.sign() <= 0) throw ModelError("beta must be positive");
    if (a.sign() < 0) throw ModelError("a must be non-negative");
    ReducedModel m;
    m.a = a;
    m.gamma = gamma;
    m.alpha = alpha;
    m.beta = beta;
    m.J = a.like(J);
    m.is_qes = J >= 1;
    m.H = beta * beta * 16;
    m.C = alpha * beta * 16;
    m.F = a * a + a * gamma * 2;
    m.B = b_from_J(m.J, alpha, beta, a, gamma);
    m.provenance.kind = ModelKind::reduced;
    m.provenance.values = {{"a", a}, {"gamma", gamma}, {"alpha", alpha}, {"beta", beta}, {"J", m.J}};
    return m;
}

Scalar rho_squared_from_configuration(ModelKind kind, const std::vector<Position>& positions) {
    if (positions.empty()) throw ModelError("empty configuration");
    const std::size_t dim = positions.front().size();
    if (dim == 0) throw ModelError("positions have no components");
    for (const auto& r : positions) {
        if (r.size() != dim) throw ModelError("positions have inconsistent dimensions");
    }
    const ScalarMode mode = positions.front().front().mode();
    Scalar total = Scalar::integer(0, mode);
    switch (kind) {
        case ModelKind::calogero_marchioro: {
            if (dim < 2) throw ModelError("Calogero-Marchioro positions need D >= 2 components");
            for (std::size_t i = 0; i < positions.size(); ++i) {
                for (std::size_t j = i + 1; j < positions.size(); ++j) {
                    for (std::size_t k = 0; k < dim; ++k) {
                        Scalar d = positions[i][k] - positions[j][k];
                        total += d * d;
                    }
                }
            }
            return total / static_cast<long>(positions.size());
        }
        case ModelKind::novel_correlation:
        case ModelKind::calogero_sutherland: {
            const std::size_t want = kind == ModelKind::novel_correlation ? 2 : 1;
            if (dim != want) {
                throw ModelError(to_string(kind) + " positions need " + std::to_string(want) + " components, got " +
                                 std::to_string(dim));
            }
            for (const auto& r : positions) {
                for (const auto& x : r) total += x * x;
            }
            return total;
        }
        case ModelKind::reduced: break;
    }
    throw ModelError("a reduced model has no particle configuration");
}

Scalar rho_from_configuration(ModelKind kind, const std::vector<Position>& positions) {
    return sqrt(rho_squared_from_configuration(kind, positions));
}

}  // namespace qes
