#pragma once

// Independent reference computations used to check the library. None of
// these call into congruence, substitute, power or min_poly.

#include <string>
#include <vector>

#include "diagform/form.hpp"
#include "diagform/matrix.hpp"
#include "diagform/upoly.hpp"

namespace oracle {

using diagform::Form;
using diagform::Matrix;
using diagform::Scalar;
using diagform::SymTensor;
using diagform::UPoly;
using diagform::Vector;

/// B_J = sum over all n^d ordered tuples I of a_I * prod p_{i_k j_k}.
SymTensor naive_congruence(const SymTensor& a, const Matrix& p);

/// sum_i lambda_i (row_i . x)^d by expanding the d-fold product over ordered
/// tuples (no multinomial coefficients).
Form tuple_expand(const Vector& lambdas, const std::vector<Vector>& rows, unsigned d);

/// Characteristic polynomial det(tI - M) by Faddeev-LeVerrier.
UPoly charpoly(const Matrix& m);

/// Hand-rolled Gaussian rank that shares no code with the library.
std::size_t plain_rank(std::vector<Vector> rows);

bool in_span(const std::vector<Matrix>& basis, const Matrix& m);
bool spans_equal(const std::vector<Matrix>& a, const std::vector<Matrix>& b);

/// Same multiset of vectors.
bool same_rows_up_to_permutation(const std::vector<Vector>& a, const std::vector<Vector>& b);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix ints(const std::vector<std::vector<long>>& rows);

} // namespace oracle

namespace fixtures {

using diagform::Matrix;
using diagform::Scalar;

inline const std::string f6 = "x1^4+x2^4+6*x1^2*x2^2";
inline const std::string fm6 = "x1^4+x2^4-6*x1^2*x2^2";

inline std::string f_t(long t)
{
    return "x1^4+x2^4+" + std::string("(") + std::to_string(t) + ")*x1^2*x2^2";
}

inline std::string cubic_lambda(long lambda)
{
    return "x1^3+x2^3+x3^3+" + std::string("(") + std::to_string(6 * lambda) + ")*x1*x2*x3";
}

inline const std::string cubic_q2 =
    "x1^3 - 3*x1^2*x2 + 3*x1*x2^2 + 3*x1^2*x3 + 3*x1*x3^2 - 6*x1*x2*x3 + 13*x2^3 - 3*x2^2*x3 - 9*x2*x3^2 + 15*x3^3";

inline const std::string quartic_q3 =
    "x1^4+4*x1^3*x2+4*x1^3*x3+4*x1^3*x4-12*x1^2*x2^2+12*x1^2*x2*x3-24*x1^2*x2*x4-12*x1^2*x3^2-24*x1^2*x3*x4"
    "+24*x1^2*x4^2+4*x1*x2^3-24*x1*x2^2*x3+12*x1*x2^2*x4-24*x1*x2*x3^2+96*x1*x2*x3*x4-24*x1*x2*x4^2+4*x1*x3^3"
    "+12*x1*x3^2*x4-24*x1*x3*x4^2+4*x1*x4^3+x2^4+4*x2^3*x3+4*x2^3*x4+24*x2^2*x3^2-24*x2^2*x3*x4-12*x2^2*x4^2"
    "+4*x2*x3^3-24*x2*x3^2*x4+12*x2*x3*x4^2+4*x2*x4^3+x3^4+4*x3^3*x4-12*x3^2*x4^2+4*x3*x4^3+x4^4";

// Known center basis of the sqrt(2) cubic.
inline Matrix cubic_q2_x1() { return oracle::ints({{1, -1, 1}, {0, 0, 0}, {0, 0, 0}}); }
inline Matrix cubic_q2_x2() { return oracle::ints({{0, 1, -1}, {0, 1, 0}, {0, 0, 1}}); }
inline Matrix cubic_q2_x3() { return oracle::ints({{0, 1, -5}, {0, 0, 1}, {0, -1, 6}}); }

inline Matrix cubic_q2_slice(int i)
{
    switch (i) {
    case 1:
        return oracle::ints({{1, -1, 1}, {-1, 1, -1}, {1, -1, 1}});
    case 2:
        return oracle::ints({{-1, 1, -1}, {1, 13, -1}, {-1, -1, -3}});
    default:
        return oracle::ints({{1, -1, 1}, {-1, -1, -3}, {1, -3, 15}});
    }
}

inline Matrix quartic_q3_y() { return oracle::ints({{0, 1}, {-1, 1}}); }

inline Matrix quartic_q3_eps1()
{
    return Scalar::rational(1, 3) * oracle::ints({{2, -1, -1, 2}, {1, 1, -2, 1}, {1, -2, 1, 1}, {2, -1, -1, 2}});
}

inline Matrix quartic_q3_eps2()
{
    return Scalar::rational(1, 3) * oracle::ints({{1, 1, 1, -2}, {-1, 2, 2, -1}, {-1, 2, 2, -1}, {-2, 1, 1, 1}});
}

} // namespace fixtures
