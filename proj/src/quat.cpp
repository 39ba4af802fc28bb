#include "qgeom/quat.hpp"

namespace qgeom {

std::pair<CVec, CVec> split_complex(const HVecd& q) {
    CVec u(q.size()), v(q.size());
    for (size_t l = 0; l < q.size(); ++l) {
        u[l] = cplx(q[l].w, q[l].x);
        // j (y - z i) = y j + z k
        v[l] = cplx(q[l].y, -q[l].z);
    }
    return {u, v};
}

HVecd join_complex(const CVec& u, const CVec& v) {
    require_dim(v.size(), u.size(), "join_complex");
    HVecd q(u.size());
    for (Eigen::Index l = 0; l < u.size(); ++l) q[l] = {u[l].real(), u[l].imag(), v[l].real(), -v[l].imag()};
    return q;
}

MatD right_mult_block(const Quatd& a, int n) {
    MatD m = MatD::Zero(4 * n, 4 * n);
    MatD b = right_mult_matrix(a);
    for (int l = 0; l < n; ++l) m.block(4 * l, 4 * l, 4, 4) = b;
    return m;
}

MatD left_mult_block(const Quatd& a, int n) {
    MatD m = MatD::Zero(4 * n, 4 * n);
    MatD b = left_mult_matrix(a);
    for (int l = 0; l < n; ++l) m.block(4 * l, 4 * l, 4, 4) = b;
    return m;
}

std::array<MatD, 3> standard_frame(int n) {
    return {right_mult_block(conj(unit_i<double>()), n), right_mult_block(conj(unit_j<double>()), n),
            right_mult_block(conj(unit_k<double>()), n)};
}

}  // namespace qgeom
