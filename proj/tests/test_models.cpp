#include <doctest.h>

#include "qes/models.hpp"
#include "qes/spectra.hpp"
#include "support.hpp"

using namespace qes;
using qes::test::Q;

namespace {

SexticCoefficients radial_J(long J, Scalar F = Q(0), Scalar C = Q(2), Scalar H = Q(1, 4)) {
    SexticCoefficients r;
    r.F = F;
    r.C = C;
    r.H = H;
    r.J = J;
    return r;
}

std::string fingerprint(const ReducedModel& m) {
    const QESSpectrum sp = compute_spectrum(m.recursion().to_mode(ScalarMode::floating()));
    std::string out;
    for (const auto& e : sp.energies) out += e.decimal(40) + ";";
    for (const auto& w : sp.weights) out += w.decimal(40) + ";";
    return out;
}

}  // namespace

TEST_CASE("Calogero-Marchioro reduction") {
    CHECK(lambda_D(3, Q(2)) == 1);
    CHECK(gamma_calogero_marchioro(3, 3, Q(1)) == 5);
    CalogeroMarchioroParams p;
    p.N = 3;
    p.D = 3;
    p.g = Q(2);
    p.G = Q(1);
    p.radial = radial_J(2);
    const ReducedModel m = cm_reduce(p);
    CHECK(m.gamma == 5);
    CHECK(m.a == 0);
    CHECK(m.alpha == 1);
    CHECK(m.beta == Q(1, 8));
    CHECK(m.J == 2);
    CHECK(m.is_qes);
    CHECK(m.B == b_from_J(Q(2), Q(1), Q(1, 8), Q(0), Q(5)));
    CHECK(m.provenance.kind == ModelKind::calogero_marchioro);

    CalogeroMarchioroParams off;
    off.N = 2;
    off.D = 2;
    off.g = Q(0);
    off.G = Q(0);
    off.radial = radial_J(1);
    const ReducedModel z = cm_reduce(off);
    CHECK(lambda_D(2, Q(0)) == 0);
    CHECK(z.gamma == 0);
    CHECK(z.a == 0);

    CalogeroMarchioroParams sd = p;
    sd.radial = radial_J(3, Q(0), Q(0), Q(9));
    CHECK(cm_reduce(sd).alpha == 0);
    CHECK(cm_reduce(sd).beta == Q(3, 4));
}

TEST_CASE("Calogero-Marchioro validation") {
    CalogeroMarchioroParams p;
    p.N = 3;
    p.D = 3;
    p.g = Q(2);
    p.G = Q(2);
    p.radial = radial_J(2);
    CHECK_THROWS_AS(cm_reduce(p), ModelError);
    p.G.reset();
    CHECK_NOTHROW(cm_reduce(p));
    p.radial.H = Q(0);
    CHECK_THROWS_AS(cm_reduce(p), ModelError);
    p.radial = radial_J(2, Q(-1));
    CHECK_THROWS_AS(cm_reduce(p), ModelError);
    p.radial = radial_J(2);
    p.radial.B = Q(1);
    CHECK_THROWS_AS(cm_reduce(p), ModelError);
    p.radial = radial_J(2);
    p.N = 1;
    CHECK_THROWS_AS(cm_reduce(p), ModelError);
    p.N = 3;
    p.D = 1;
    CHECK_THROWS_AS(cm_reduce(p), ModelError);
}

TEST_CASE("Lambda_D squares back to G") {
    test::RationalSource src;
    for (int i = 0; i < 30; ++i) {
        const int D = src.integer(2, 9);
        const Scalar g = src.non_negative();
        const Scalar lf = lambda_D(D, g.to_mode(ScalarMode::floating()));
        // Lambda^2 + (D-2) Lambda = g
        const Scalar back = lf * lf + lf * (D - 2);
        CHECK(test::rel_error(back, g.to_mode(ScalarMode::floating())) < ldexp(lf.like(1), -120));
    }
    // (D-2)^2 + 4g a perfect square keeps it exact: D = 4, g = 3 gives sqrt(16) = 4, Lambda = 1.
    CHECK(lambda_D(4, Q(3)) == 1);
    CHECK_THROWS_AS(lambda_D(2, Q(-1)), ModelError);
    CHECK_THROWS_AS(lambda_D(3, Q(1)), InexactError);
}

TEST_CASE("novel-correlation reduction") {
    CHECK(delta_novel_correlation(2, Q(1)) == 3);
    NovelCorrelationParams p;
    p.N = 2;
    p.g = Q(1);
    p.radial = radial_J(1);
    const ReducedModel m = novel_reduce(p);
    CHECK(m.gamma == 3);
    CHECK(m.a == 0);
    CHECK(p.g1() == 0);
    CHECK(p.g2() == 1);
    p.g = Q(0);
    CHECK_THROWS_AS(novel_reduce(p), ModelError);
}

TEST_CASE("Calogero-Sutherland reduction") {
    CHECK(delta_calogero_sutherland(3, Q(2)) == 5);
    CHECK(delta_calogero_sutherland(2, Q(0)) == Q(1, 2));
    CalogeroSutherlandParams p;
    p.N = 3;
    p.g = Q(2);
    p.radial = radial_J(1);
    CHECK(cs_reduce(p).gamma == 5);
    CHECK(cs_reduce(p).a == 0);
    p.g = Q(-1);
    CHECK_THROWS_AS(cs_reduce(p), ModelError);
}

TEST_CASE("a_from_F") {
    CHECK(a_from_F(Q(0), Q(7)) == 0);
    CHECK(a_from_F(Q(9, 4), Q(2)) == Q(1, 2));
    CHECK_THROWS_AS(a_from_F(Q(3), Q(1, 2)), InexactError);
    const ScalarMode f = ScalarMode::floating();
    const Scalar a = a_from_F(Q(3).to_mode(f), Q(1, 2).to_mode(f));
    const Scalar expect = (sqrt(Scalar::integer(13, f)) - 1) / 2;
    CHECK(test::rel_error(a, expect) < ldexp(a.like(1), -120));
    CHECK_THROWS_AS(a_from_F(Q(-1), Q(1)), ModelError);

    test::RationalSource src;
    for (int i = 0; i < 40; ++i) {
        const Scalar gamma = src.positive();
        CHECK(a_from_F(gamma * 2 + 1, gamma) == 1);
        const Scalar a0 = src.non_negative();
        const Scalar F = a0 * a0 + a0 * gamma * 2;
        const Scalar ae = a_from_F(F, gamma);
        CHECK(ae == a0);
        CHECK((ae * ae + ae * gamma * 2 - F) == 0);
        const Scalar ff = F.to_mode(f) + Scalar::exact(1, 3).to_mode(f);
        const Scalar af = a_from_F(ff, gamma.to_mode(f));
        CHECK(af.sign() >= 0);
        CHECK(abs(af * af + af * gamma.to_mode(f) * 2 - ff) / ff < Scalar::parse("1e-30", f));
    }
}

TEST_CASE("j_from_B") {
    const Scalar alpha = Q(1), beta = Q(1, 64), a = Q(0), gamma = Q(1);
    const JResult one = j_from_B(alpha * alpha * 4 - beta * 8 * (a + gamma + 2), alpha, beta, a, gamma);
    CHECK(one.J == 1);
    CHECK(one.is_qes);
    CHECK(one.integer == 1L);
    const JResult half = j_from_B(alpha * alpha * 4 - beta * 8 * (a + gamma + 3), alpha, beta, a, gamma);
    CHECK(half.J == Q(3, 2));
    CHECK_FALSE(half.is_qes);
    const JResult four = j_from_B(-(beta * 8 * (a + gamma + 8)), Q(0), beta, a, gamma);
    CHECK(four.J == 4);
    CHECK(four.is_qes);
    CHECK_FALSE(j_from_B(alpha * alpha * 4 - beta * 8 * (a + gamma), alpha, beta, a, gamma).is_qes);
    CHECK_THROWS_AS(j_from_B(Q(1), alpha, Q(0), a, gamma), ModelError);

    test::RationalSource src;
    const ScalarMode f = ScalarMode::floating();
    for (int i = 0; i < 40; ++i) {
        const long J = src.integer(1, 30);
        const Scalar al = src.any(), be = src.positive(), aa = src.non_negative(), ga = src.positive();
        const JResult r = j_from_B(b_from_J(Q(J), al, be, aa, ga), al, be, aa, ga);
        CHECK(r.J == J);
        CHECK(r.integer == J);
        const JResult rf = j_from_B(b_from_J(Q(J).to_mode(f), al.to_mode(f), be.to_mode(f), aa.to_mode(f), ga.to_mode(f)),
                                    al.to_mode(f), be.to_mode(f), aa.to_mode(f), ga.to_mode(f));
        CHECK(rf.is_qes);
        CHECK(rf.integer == J);
    }
    ModelOptions loose;
    loose.integer_tolerance = 1e-3;
    const Scalar nearly = b_from_J(Scalar::parse("2.0001", f), alpha.to_mode(f), beta.to_mode(f), a.to_mode(f),
                                   gamma.to_mode(f));
    CHECK_FALSE(j_from_B(nearly, alpha.to_mode(f), beta.to_mode(f), a.to_mode(f), gamma.to_mode(f)).is_qes);
    CHECK(j_from_B(nearly, alpha.to_mode(f), beta.to_mode(f), a.to_mode(f), gamma.to_mode(f), loose).is_qes);
}

TEST_CASE("non-integer J is rejected downstream") {
    CalogeroMarchioroParams p;
    p.N = 3;
    p.D = 3;
    p.g = Q(2);
    p.radial.F = Q(0);
    p.radial.C = Q(2);
    p.radial.H = Q(1, 4);
    p.radial.B = b_from_J(Q(3, 2), Q(1), Q(1, 8), Q(0), Q(5));
    const ReducedModel m = cm_reduce(p);
    CHECK(m.J == Q(3, 2));
    CHECK_FALSE(m.is_qes);
    CHECK_THROWS_AS(m.recursion(), NotQESError);
}

TEST_CASE("equal reduced parameters give identical spectra") {
    CalogeroMarchioroParams cm;
    cm.N = 3;
    cm.D = 3;
    cm.g = Q(2);
    cm.radial = radial_J(3, Q(11));
    CalogeroSutherlandParams cs;
    cs.N = 3;
    cs.g = Q(2);
    cs.radial = radial_J(3, Q(11));
    NovelCorrelationParams nc;
    nc.N = 2;
    nc.g = Q(2);
    nc.radial = radial_J(3, Q(11));
    const ReducedModel a = cm_reduce(cm), b = cs_reduce(cs), c = novel_reduce(nc);
    CHECK(a.gamma == 5);
    CHECK(a.a == 1);
    CHECK(a.recursion() == b.recursion());
    CHECK(a.recursion() == c.recursion());
    const std::string fa = fingerprint(a);
    CHECK(fa == fingerprint(b));
    CHECK(fa == fingerprint(c));
    const ReducedModel r = reduced_model(Q(1), Q(5), Q(1), Q(1, 8), 3);
    CHECK(fa == fingerprint(r));
    CHECK(r.B == a.B);
    CHECK(r.C == a.C);
    CHECK(r.H == a.H);
    CHECK(r.F == a.F);
}

TEST_CASE("reduced model validation") {
    CHECK_THROWS_AS(reduced_model(Q(0), Q(1), Q(1), Q(0), 1), ModelError);
    CHECK_THROWS_AS(reduced_model(Q(-1), Q(1), Q(1), Q(1), 1), ModelError);
    CHECK_THROWS_AS(reduced_model(Q(0), Q(1), Scalar::floating(1.0L), Q(1), 1), ModeMismatch);
    CHECK(reduced_model(Q(0), Q(1), Q(1), Q(1, 64), 2).s() == 2);
}

TEST_CASE("rho from configurations") {
    const Scalar d = Q(3);
    for (int D = 2; D <= 4; ++D) {
        Position p0(static_cast<std::size_t>(D), Q(0)), p1 = p0;
        p1[0] = d;
        CHECK(rho_squared_from_configuration(ModelKind::calogero_marchioro, {p0, p1}) == d * d / 2);
    }
    CHECK(rho_squared_from_configuration(ModelKind::novel_correlation, {{Q(0), Q(0)}, {Q(3), Q(4)}}) == 25);
    CHECK(rho_from_configuration(ModelKind::novel_correlation, {{Q(0), Q(0)}, {Q(3), Q(4)}}) == 5);
    CHECK(rho_squared_from_configuration(ModelKind::calogero_sutherland, {{Q(1)}, {Q(-1)}}) == 2);
    CHECK_THROWS_AS(rho_squared_from_configuration(ModelKind::calogero_sutherland, {{Q(1), Q(0)}}), ModelError);
    CHECK_THROWS_AS(rho_squared_from_configuration(ModelKind::novel_correlation, {{Q(1)}, {Q(0)}}), ModelError);
    CHECK_THROWS_AS(rho_squared_from_configuration(ModelKind::calogero_marchioro, {{Q(1), Q(0)}, {Q(0)}}), ModelError);
    CHECK_THROWS_AS(rho_squared_from_configuration(ModelKind::reduced, {{Q(1)}}), ModelError);
    CHECK_THROWS_AS(rho_from_configuration(ModelKind::calogero_sutherland, {{Q(1)}, {Q(1)}}), InexactError);
}
