#include <doctest.h>

#include "diagform/errors.hpp"
#include "diagform/form.hpp"
#include "diagform/harness.hpp"
#include "oracles.hpp"

using namespace diagform;
using oracle::ints;

namespace {

const FieldPtr& q() { return Field::rationals(); }

Form parse(const std::string& s) { return parse_form(s, q()); }

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng)
{
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = Scalar(rng.uniform(-3, 3));
        }
    }
    return m;
}

Vector random_vector(std::size_t n, Rng& rng)
{
    Vector v(n);
    for (auto& x : v) {
        x = Scalar::rational(rng.uniform(-5, 5), rng.uniform(1, 3));
    }
    return v;
}

} // namespace

TEST_SUITE("form")
{
    TEST_CASE("parse examples")
    {
        const Form f6 = parse(fixtures::f6);
        CHECK(f6.nvars() == 2);
        CHECK(f6.degree() == 4);
        CHECK(f6.terms().size() == 3);
        CHECK(f6.coeff({2, 2}) == Scalar(6));

        const Form f1 = parse(fixtures::cubic_lambda(1));
        CHECK(f1.nvars() == 3);
        CHECK(f1.degree() == 3);
        CHECK(f1.coeff({1, 1, 1}) == Scalar(6));

        CHECK_THROWS_AS(parse("x1^2+x2^3"), NotHomogeneous);
        CHECK_THROWS_AS(parse("x1^2+x2^2"), DegreeTooLow);
        CHECK_THROWS_AS(parse("x1^3+"), SyntaxError);
        CHECK_THROWS_AS(parse("x0^3"), SyntaxError);
        CHECK_THROWS_AS(parse("x1^3/0"), DivisionByZero);
        CHECK_THROWS_AS(parse_form("x1^3+sqrt(2)*x2^3", q()), FieldError);
    }

    TEST_CASE("parser arithmetic")
    {
        CHECK(parse("(x1+x2)^3") == parse("x1^3+3*x1^2*x2+3*x1*x2^2+x2^3"));
        CHECK(parse("x1*x1*x2/2") == parse("1/2*x1^2*x2"));
        CHECK(parse("0.5*x1^3") == parse("1/2*x1^3"));
        CHECK(parse("-x1^3 - -x2^3") == parse("x2^3-x1^3"));
        CHECK(parse_form("x1^3", q(), 3).nvars() == 3);
        CHECK_THROWS_AS(parse_form("x3^3", q(), 2), IndexOutOfRange);
        const Form r = parse_form("sqrt(2)*x1^3+x2^3", FieldConfig::rationals());
        CHECK(r.coeff({3, 0}) * r.coeff({3, 0}) == Scalar(2));
    }

    TEST_CASE("printing is canonical and reparses")
    {
        const Form f = parse("x2^3 - 3*x1^2*x2 + 1/2*x1^3");
        CHECK(f.to_string() == "1/2*x1^3-3*x1^2*x2+x2^3");
        Rng rng(5);
        for (int trial = 0; trial < 50; ++trial) {
            const Form g = random_dense_form(3, 3, 100 + trial, 5);
            CHECK(parse_form(g.to_string(), q(), 3) == g);
        }
    }

    TEST_CASE("gram tensor examples")
    {
        const SymTensor a6 = gram_tensor(parse(fixtures::f6));
        CHECK(a6.get({0, 0, 1, 1}) == Scalar(1));
        CHECK(a6.get({0, 1, 0, 1}) == Scalar(1));
        CHECK(a6.get({0, 0, 0, 0}) == Scalar(1));
        CHECK(a6.get({0, 0, 0, 1}) == Scalar(0));

        const SymTensor a1 = gram_tensor(parse(fixtures::cubic_lambda(1)));
        CHECK(a1.get({0, 1, 2}) == Scalar(1));
        CHECK(a1.get({2, 0, 1}) == Scalar(1));

        const SymTensor p = gram_tensor(parse_form("x1^5", q(), 3));
        CHECK(p.get({0, 0, 0, 0, 0}) == Scalar(1));
        CHECK(p.entries().size() == 1);
    }

    TEST_CASE("form from gram examples")
    {
        SymTensor d(2, 3);
        d.set({0, 0, 0}, Scalar(1));
        d.set({1, 1, 1}, Scalar(1));
        CHECK(form_from_gram(d).to_string() == "x1^3+x2^3");

        SymTensor a(2, 3);
        a.set({0, 0, 1}, Scalar(-1));
        CHECK(form_from_gram(a).coeff({2, 1}) == Scalar(-3));

        const Form f6 = parse(fixtures::f6);
        CHECK(form_from_gram(gram_tensor(f6)) == f6);
    }

    TEST_CASE("gram round trip on random forms")
    {
        for (std::size_t n = 1; n <= 4; ++n) {
            for (unsigned d = 3; d <= 5; ++d) {
                for (std::uint64_t seed = 0; seed < 5; ++seed) {
                    const Form f = random_dense_form(n, d, seed * 31 + n * 7 + d);
                    CHECK(form_from_gram(gram_tensor(f)) == f);
                }
            }
        }
    }

    TEST_CASE("congruence examples")
    {
        const SymTensor a6 = gram_tensor(parse(fixtures::f6));
        CHECK(congruence(a6, Matrix::identity(2)) == a6);

        const SymTensor b = congruence(a6, ints({{1, 1}, {-1, 1}}));
        CHECK(b.is_diagonal());
        CHECK(b.get({0, 0, 0, 0}) == Scalar(8));
        CHECK(b.get({1, 1, 1, 1}) == Scalar(8));

        const SymTensor c = congruence(gram_tensor(parse_form("x1^3", q(), 2)), ints({{1, 0}, {1, 1}}));
        CHECK(c.get({0, 0, 1}) == Scalar(0));
        const SymTensor c2 = congruence(gram_tensor(parse_form("x1^3", q(), 2)), ints({{1, 1}, {0, 1}}));
        CHECK(form_from_gram(c2) == parse("(x1+x2)^3"));
        CHECK(c2.get({0, 0, 1}) == Scalar(1));
    }

    TEST_CASE("congruence agrees with the naive oracle")
    {
        Rng rng(17);
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t n = 2 + trial % 3;
            const unsigned d = 3 + trial % 2;
            const SymTensor a = gram_tensor(random_dense_form(n, d, 500 + trial, 4));
            const Matrix p = random_matrix(n, n - trial % 2, rng);
            CHECK(congruence(a, p) == oracle::naive_congruence(a, p));
        }
    }

    TEST_CASE("congruence functoriality")
    {
        Rng rng(23);
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t n = 2 + trial % 3;
            const unsigned d = 3 + trial % 3;
            const SymTensor a = gram_tensor(random_dense_form(n, d, 900 + trial, 4));
            const Matrix p = random_matrix(n, n, rng);
            const Matrix qm = random_matrix(n, n, rng);
            CHECK(congruence(congruence(a, p), qm) == congruence(a, p * qm));
        }
    }

    TEST_CASE("slice examples")
    {
        const SymTensor a6 = gram_tensor(parse(fixtures::f6));
        CHECK(slice(a6, {0, 1}) == ints({{0, 1}, {1, 0}}));
        CHECK(slice(a6, {0, 0}) == Matrix::identity(2));

        const SymTensor a3 = gram_tensor(parse(fixtures::cubic_q2));
        for (int i = 1; i <= 3; ++i) {
            CHECK(slice(a3, {i - 1}) == fixtures::cubic_q2_slice(i));
        }

        SymTensor diag(3, 4);
        diag.set({1, 1, 1, 1}, Scalar(5));
        const Matrix s = slice(diag, {1, 1});
        CHECK(s(1, 1) == Scalar(5));
        CHECK(slice(diag, {0, 1}).is_zero());

        CHECK_THROWS_AS(slice(a6, {0}), DimensionMismatch);
        CHECK_THROWS_AS(slice(a6, {0, 2}), IndexOutOfRange);
    }

    TEST_CASE("slices are symmetric and tail-order invariant")
    {
        for (int trial = 0; trial < 20; ++trial) {
            const SymTensor a = gram_tensor(random_dense_form(3, 4, 1300 + trial, 6));
            for (const auto& m : all_slices(a)) {
                CHECK(m.is_symmetric());
            }
            CHECK(slice(a, {0, 2}) == slice(a, {2, 0}));
        }
    }

    TEST_CASE("hessian examples")
    {
        CHECK(hessian_at(parse_form("x1^3", q()), {Scalar(1)}) == ints({{6}}));
        const Form f6 = parse(fixtures::f6);
        CHECK(hessian_at(f6, {Scalar(1), Scalar(0)}) == ints({{12, 0}, {0, 12}}));
        CHECK(hessian_at(f6, {Scalar(1), Scalar(1)}) == ints({{24, 24}, {24, 24}}));
    }

    TEST_CASE("evaluation consistency")
    {
        Rng rng(29);
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t n = 2 + trial % 3;
            const unsigned d = 3 + trial % 2;
            const Form f = random_dense_form(n, d, 1700 + trial, 5);
            const Matrix p = random_matrix(n, n, rng);
            const Vector v = random_vector(n, rng);
            const Form g = form_from_gram(congruence(gram_tensor(f), p));
            CHECK(f.evaluate(p * v) == g.evaluate(v));
            CHECK(substitute(f, p) == g);
        }
    }

    TEST_CASE("multi-index helpers")
    {
        CHECK(to_multi_index({2, 0, 1}) == MultiIndex{0, 0, 2});
        CHECK(to_exponent({0, 0, 2}, 3) == Exponent{2, 0, 1});
        CHECK(multinomial({2, 2}) == 6);
        CHECK(multinomial({1, 1, 1}) == 6);
        CHECK(sorted_multi_indices(3, 2).size() == 6);
        CHECK(sorted_multi_indices(4, 5).size() == 56);
        CHECK_THROWS_AS(to_exponent({0, 3}, 3), IndexOutOfRange);
    }

    TEST_CASE("power and products")
    {
        const Form l = linear_form({Scalar(1), Scalar(-1)});
        CHECK(power(l, 3) == parse("(x1-x2)^3"));
        CHECK(power(l, 2) * l == power(l, 3));
        Form f(2, 3);
        CHECK_THROWS_AS(f.add_term({1, 1}, Scalar(1)), NotHomogeneous);
    }
}
