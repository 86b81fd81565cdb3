#include <doctest.h>

#include <random>

#include "diagform/center.hpp"
#include "diagform/errors.hpp"
#include "diagform/idem.hpp"
#include "oracles.hpp"

using namespace diagform;
using oracle::ints;

namespace {

const FieldPtr& q() { return Field::rationals(); }

CenterBasis center_of(const std::string& s, const FieldConfig& cfg = {})
{
    return center_basis(gram_tensor(parse_form(s, cfg)));
}

void check_complete_orthogonal(const IdempotentSplit& split, std::size_t n)
{
    Matrix sum(n, n);
    std::size_t rank_total = 0;
    for (std::size_t i = 0; i < split.idempotents.size(); ++i) {
        const Matrix& e = split.idempotents[i];
        CHECK(e * e == e);
        CHECK(rank(e) == split.ranks[i]);
        for (std::size_t j = 0; j < split.idempotents.size(); ++j) {
            if (i != j) {
                CHECK((e * split.idempotents[j]).is_zero());
            }
        }
        sum += e;
        rank_total += split.ranks[i];
    }
    CHECK(sum == Matrix::identity(n));
    CHECK(rank_total == n);
}

Matrix random_element(const CenterBasis& z, std::mt19937_64& rng)
{
    Matrix r(z.n, z.n);
    for (const auto& x : z.basis) {
        r += Scalar(static_cast<long>(rng() % 11) - 5) * x;
    }
    return r;
}

} // namespace

TEST_SUITE("idem")
{
    TEST_CASE("minimal polynomial examples")
    {
        CHECK(min_poly(ints({{0, 1}, {1, 0}})) == UPoly({Scalar(-1), Scalar(0), Scalar(1)}));
        CHECK(min_poly(ints({{0, 1}, {-1, 6}})) == UPoly({Scalar(1), Scalar(-6), Scalar(1)}));
        CHECK(min_poly(Matrix::identity(3)) == UPoly({Scalar(-1), Scalar(1)}));
        CHECK(min_poly(ints({{0, 1}, {0, 0}})) == UPoly({Scalar(0), Scalar(0), Scalar(1)}));
    }

    TEST_CASE("f6 splits into the two projectors")
    {
        const CenterBasis z = center_of(fixtures::f6);
        const IdempotentSplit s = split_idempotents(z, FieldConfig::rationals());
        REQUIRE(s.idempotents.size() == 2);
        check_complete_orthogonal(s, 2);
        const Matrix plus = Scalar::rational(1, 2) * ints({{1, 1}, {1, 1}});
        const Matrix minus = Scalar::rational(1, 2) * ints({{1, -1}, {-1, 1}});
        CHECK(((s.idempotents[0] == plus && s.idempotents[1] == minus) ||
               (s.idempotents[0] == minus && s.idempotents[1] == plus)));
        CHECK(s.certificate == SemisimpleCertificate::squarefree);
        CHECK(s.complete);
    }

    TEST_CASE("sqrt(-3) quartic splits into the known idempotents over Q")
    {
        const CenterBasis z = center_of(fixtures::quartic_q3);
        const IdempotentSplit s = split_idempotents(z, FieldConfig::rationals());
        REQUIRE(s.idempotents.size() == 2);
        check_complete_orthogonal(s, 4);
        CHECK(s.ranks == std::vector<std::size_t>{2, 2});
        CHECK(oracle::in_span(s.idempotents, fixtures::quartic_q3_eps1()));
        CHECK(oracle::in_span(s.idempotents, fixtures::quartic_q3_eps2()));
        CHECK(s.extension_requests.size() == 2);
        for (const auto& req : s.extension_requests) {
            REQUIRE(req.radicand.has_value());
            CHECK(*req.radicand == -3);
        }
    }

    TEST_CASE("trivial center gives the identity")
    {
        const CenterBasis z = center_of(fixtures::f_t(1));
        const IdempotentSplit s = split_idempotents(z, FieldConfig::rationals());
        REQUIRE(s.idempotents.size() == 1);
        CHECK(s.idempotents[0] == Matrix::identity(2));
    }

    TEST_CASE("automatic adjunction within budget")
    {
        const CenterBasis z = center_of(fixtures::cubic_q2);
        const IdempotentSplit none = split_idempotents(z, FieldConfig::rationals());
        CHECK(none.idempotents.size() == 2);
        const IdempotentSplit auto2 = split_idempotents(z, FieldConfig::tower({}, 1));
        CHECK(auto2.idempotents.size() == 3);
        CHECK(auto2.field->radicands() == std::vector<long>{2});
        check_complete_orthogonal(auto2, 3);
        for (const auto& e : auto2.idempotents) {
            CHECK(is_rank1_trace1(e));
        }
    }

    TEST_CASE("rank one trace one")
    {
        CHECK(is_rank1_trace1(fixtures::cubic_q2_x1()));
        CHECK(is_rank1_trace1(Scalar::rational(1, 2) * ints({{1, 1}, {1, 1}})));
        CHECK_FALSE(is_rank1_trace1(Matrix::identity(2)));
        CHECK_FALSE(is_rank1_trace1(ints({{2, 0}, {0, 0}})));
    }

    TEST_CASE("multiplication table")
    {
        const CenterBasis z6 = center_of(fixtures::f6);
        const auto t6 = mult_table(z6);
        // basis {I, S}: S * S = I
        CHECK(t6[1][1] == Vector{Scalar(1), Scalar(0)});

        CenterBasis sub;
        sub.n = 4;
        const Matrix x2 = oracle::kron(Matrix::identity(2), fixtures::quartic_q3_y());
        sub.basis = {Matrix::identity(4), x2};
        const auto t4 = mult_table(sub);
        CHECK(t4[1][1] == Vector{Scalar(-1), Scalar(1)});
        CHECK(x2 * x2 == x2 - Matrix::identity(4));

        CenterBasis unit;
        unit.n = 3;
        unit.basis = {Matrix::identity(3)};
        CHECK(mult_table(unit)[0][0] == Vector{Scalar(1)});

        CenterBasis open;
        open.n = 2;
        open.basis = {ints({{0, 1}, {0, 0}}), ints({{0, 0}, {1, 0}})};
        CHECK_THROWS_AS(mult_table(open), NotClosed);
    }

    TEST_CASE("classification examples")
    {
        {
            const CenterBasis z = center_of(fixtures::f6);
            const AlgebraDescription a = classify_algebra(z, split_idempotents(z, FieldConfig::rationals()));
            CHECK(a.split());
            CHECK(a.factors.size() == 2);
            CHECK(a.to_string() == "Q x Q");
        }
        {
            const CenterBasis z = center_of(fixtures::fm6);
            const AlgebraDescription a = classify_algebra(z, split_idempotents(z, FieldConfig::rationals()));
            REQUIRE(a.factors.size() == 1);
            CHECK(a.factors[0].kind == AlgebraFactor::Kind::quadratic);
            CHECK(a.factors[0].poly.to_string() == "t^2+1");
            CHECK(a.factors[0].discriminant == -1L);
        }
        {
            const CenterBasis z = center_of(fixtures::cubic_q2);
            const AlgebraDescription a = classify_algebra(z, split_idempotents(z, FieldConfig::rationals()));
            REQUIRE(a.factors.size() == 2);
            CHECK(a.factors[0].kind == AlgebraFactor::Kind::ground);
            CHECK(a.factors[1].kind == AlgebraFactor::Kind::quadratic);
            CHECK(a.factors[1].discriminant == 2L);
            CHECK(a.factors[1].poly.to_string() == "t^2-2");
        }
        {
            const CenterBasis z = center_of(fixtures::quartic_q3);
            const AlgebraDescription a = classify_algebra(z, split_idempotents(z, FieldConfig::rationals()));
            REQUIRE(a.factors.size() == 2);
            for (const auto& f : a.factors) {
                CHECK(f.kind == AlgebraFactor::Kind::quadratic);
                CHECK(f.poly.to_string() == "t^2-t+1");
            }
        }
    }

    TEST_CASE("canonical quadratics")
    {
        CHECK(canonical_quadratic(2).to_string() == "t^2-2");
        CHECK(canonical_quadratic(-1).to_string() == "t^2+1");
        CHECK(canonical_quadratic(-3).to_string() == "t^2-t+1");
        CHECK(canonical_quadratic(5).to_string() == "t^2-t-1");
    }

    TEST_CASE("non-semisimple center carries a nilpotent witness")
    {
        const CenterBasis z = center_of("x1^2*x2");
        CHECK(z.dim() == 2);
        const IdempotentSplit s = split_idempotents(z, FieldConfig::rationals());
        CHECK(s.certificate == SemisimpleCertificate::nilpotent_witness);
        REQUIRE(s.nilpotent.has_value());
        CHECK_FALSE(s.nilpotent->is_zero());
        CHECK((*s.nilpotent * *s.nilpotent).is_zero());
        CHECK(oracle::in_span(z.basis, *s.nilpotent));
        const AlgebraDescription a = classify_algebra(z, s);
        REQUIRE(a.factors.size() == 1);
        CHECK(a.factors[0].kind == AlgebraFactor::Kind::local_nonsemisimple);
        CHECK(a.factors[0].nilpotency == 2);
    }

    TEST_CASE("nilpotent witness soundness on random elements")
    {
        std::mt19937_64 rng(13);
        for (const std::string& s : {std::string("x1^2*x2"), std::string("x1^3*x2+x3^4"), std::string("x1^2*x2+x3^3")}) {
            const CenterBasis z = center_of(s);
            for (int trial = 0; trial < 10; ++trial) {
                const Matrix r = random_element(z, rng);
                const UPoly mu = min_poly(r);
                const UPoly sf = squarefree_part(mu);
                if (sf.degree() == mu.degree()) {
                    continue;
                }
                const UPoly quotient = divmod(mu, sf).first;
                CHECK_FALSE(evaluate(quotient, r).is_zero());
                const Matrix witness = evaluate(sf, r);
                CHECK_FALSE(witness.is_zero());
                CHECK(evaluate(UPoly::monomial(Scalar(1), static_cast<unsigned>(z.n)), witness).is_zero());
                CHECK(oracle::in_span(z.basis, witness));
            }
        }
    }

    TEST_CASE("minimal polynomial divides the characteristic polynomial")
    {
        std::mt19937_64 rng(19);
        for (const std::string& s : {fixtures::f6, fixtures::cubic_q2, fixtures::quartic_q3, std::string("x1^2*x2")}) {
            const CenterBasis z = center_of(s);
            for (int trial = 0; trial < 10; ++trial) {
                const Matrix r = random_element(z, rng);
                CHECK(divmod(oracle::charpoly(r), min_poly(r)).second.is_zero());
            }
        }
    }

    TEST_CASE("split diagonal centers give rank one idempotents")
    {
        for (const std::string& s : {fixtures::f6, std::string("x1^3+x2^3+x3^3"), std::string("x1^4+x2^4+x3^4+x4^4")}) {
            const CenterBasis z = center_of(s);
            const IdempotentSplit sp = split_idempotents(z, FieldConfig::rationals());
            const AlgebraDescription a = classify_algebra(z, sp);
            REQUIRE(a.split());
            CHECK(a.factors.size() == z.n);
            for (const auto& e : sp.idempotents) {
                CHECK(is_rank1_trace1(e));
            }
        }
    }

    TEST_CASE("float mode splits numerically")
    {
        const FieldConfig cfg = FieldConfig::floating(1e-9);
        const CenterBasis z = center_of(fixtures::f6, cfg);
        const IdempotentSplit s = split_idempotents(z, cfg);
        REQUIRE(s.idempotents.size() == 2);
        for (const auto& e : s.idempotents) {
            CHECK((e * e - e).is_zero());
            CHECK(rank(e) == 1);
        }
    }
}
