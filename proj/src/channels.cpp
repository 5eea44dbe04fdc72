#include "rbsim/channels.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rbsim {

CVec vectorize(const Mat& x) {
    return Eigen::Map<const CVec>(x.data(), x.size());
}

Mat devectorize(const CVec& v, int d) {
    return Eigen::Map<const Mat>(v.data(), d, d);
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat superop_identity(int d) { return Mat::Identity(d * d, d * d); }

Mat superop_compose(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("superoperator dimension mismatch");
    return a * b;
}

Mat superop_power(const Mat& a, long m) {
    if (m < 0) throw std::invalid_argument("negative superoperator power");
    Mat result = Mat::Identity(a.rows(), a.cols());
    Mat base = a;
    while (m > 0) {
        if (m & 1) result = result * base;
        base = base * base;
        m >>= 1;
    }
    return result;
}

Mat apply_superop(const Mat& s, const Mat& x) {
    const int d = static_cast<int>(x.rows());
    if (s.cols() != static_cast<Eigen::Index>(d) * d)
        throw std::invalid_argument("superoperator/operand dimension mismatch");
    return devectorize(s * vectorize(x), d);
}

Mat adjoint_channel(const Mat& u) { return kron(u.conjugate(), u); }

Mat adjoint_channel_dual(const Mat& u) { return kron(u.transpose(), u.adjoint()); }

Mat max_entangled(int d) {
    if (d < 2) throw std::invalid_argument("max_entangled requires d >= 2");
    Mat omega = Mat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) omega(i * d + i, j * d + j) = 1.0 / d;
    return omega;
}

Mat choi(const Mat& superop) {
    const int d = static_cast<int>(std::lround(std::sqrt(double(superop.rows()))));
    Mat tau = Mat::Zero(d * d, d * d);
    Mat eij = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            eij(i, j) = 1.0;
            tau += kron(apply_superop(superop, eij), eij) / double(d);
            eij(i, j) = 0.0;
        }
    }
    return tau;
}

double entanglement_fidelity(const Mat& superop) {
    const double d2 = static_cast<double>(superop.rows());
    return superop.trace().real() / d2;
}

double average_fidelity_from_entanglement(double fe, int d) {
    return (d * fe + 1.0) / (d + 1.0);
}

bool is_density_matrix(const Mat& rho, double tol) {
    if (rho.rows() != rho.cols()) return false;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(rho.trace().real() - 1.0) > tol) return false;
    Eigen::SelfAdjointEigenSolver<Mat> es((rho + rho.adjoint()) / 2.0);
    return es.eigenvalues().minCoeff() >= -tol;
}

bool is_povm_effect(const Mat& e, double tol) {
    if (e.rows() != e.cols()) return false;
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    Eigen::SelfAdjointEigenSolver<Mat> es((e + e.adjoint()) / 2.0);
    return es.eigenvalues().minCoeff() >= -tol && es.eigenvalues().maxCoeff() <= 1.0 + tol;
}

bool is_trace_preserving(const Mat& superop, double tol) {
    const int d = static_cast<int>(std::lround(std::sqrt(double(superop.rows()))));
    // tr(T(X)) = vec(I)^T S vec(X) must equal vec(I)^T vec(X) on a basis.
    CVec id = vectorize(Mat::Identity(d, d));
    CVec probe = (id.transpose() * superop).transpose();
    return (probe - id).cwiseAbs().maxCoeff() <= tol;
}

bool is_completely_positive(const Mat& superop, double tol) {
    Mat tau = choi(superop);
    Eigen::SelfAdjointEigenSolver<Mat> es((tau + tau.adjoint()) / 2.0);
    return es.eigenvalues().minCoeff() >= -tol;
}

Mat basis_state(int d, int k) {
    Mat rho = Mat::Zero(d, d);
    rho(k, k) = 1.0;
    return rho;
}

namespace {

Mat complex_gaussian(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat g(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    return g;
}

}  // namespace

Mat random_density(int d, Rng& rng) {
    Mat g = complex_gaussian(d, d, rng);
    Mat rho = g * g.adjoint();
    return rho / rho.trace().real();
}

Mat draw_random_isometry(int d, Rng& rng) {
    Mat g = complex_gaussian(d * d, d, rng);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ() * Mat::Identity(d * d, d);
    return q;
}

Mat draw_haar_unitary(int d, Rng& rng) {
    Mat g = complex_gaussian(d, d, rng);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        std::complex<double> diag = r(i, i);
        q.col(i) *= diag / std::abs(diag);
    }
    return q;
}

Mat random_x_rotation_unitary(int qubits, double a, Rng& rng) {
    std::uniform_real_distribution<double> theta(0.0, a);
    Mat u = Mat::Identity(1, 1);
    for (int q = 0; q < qubits; ++q) {
        const double t = theta(rng);
        Mat rot(2, 2);
        // exp(i t X) = cos(t) I + i sin(t) X
        rot << std::cos(t), std::complex<double>(0.0, std::sin(t)),
            std::complex<double>(0.0, std::sin(t)), std::cos(t);
        u = kron(u, rot);
    }
    return u;
}

namespace {

Mat partial_trace_second(const Mat& w, int d) {
    Mat out = Mat::Zero(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c) out(a, b) += w(a * d + c, b * d + c);
    return out;
}

}  // namespace

NoiseChannel make_noise(const NoiseModel& model, int d, Rng& rng) {
    NoiseChannel chan;
    chan.d = d;
    if (std::holds_alternative<IdentityNoise>(model)) {
        chan.apply = [](const Mat& rho) { return rho; };
        if (d <= kDenseDimCap) chan.superop = superop_identity(d);
        return chan;
    }
    if (const auto* dep = std::get_if<DepolarizeToState>(&model)) {
        if (dep->p < 0.0 || dep->p > 1.0)
            throw std::invalid_argument("depolarizing p must lie in [0, 1]");
        const double p = dep->p;
        Mat sigma = dep->sigma;
        chan.apply = [p, sigma](const Mat& rho) -> Mat {
            return p * rho + (1.0 - p) * rho.trace() * sigma;
        };
        if (d <= kDenseDimCap) {
            CVec id = vectorize(Mat::Identity(d, d));
            chan.superop = p * superop_identity(d) +
                           (1.0 - p) * (vectorize(sigma) * id.transpose());
        }
        return chan;
    }
    if (const auto* iso = std::get_if<RandomIsometryMixture>(&model)) {
        if (iso->p < 0.0 || iso->p > 1.0)
            throw std::invalid_argument("isometry mixture p must lie in [0, 1]");
        const double p = iso->p;
        Mat v = iso->isometry.size() ? iso->isometry : draw_random_isometry(d, rng);
        if (v.rows() != static_cast<Eigen::Index>(d) * d || v.cols() != d)
            throw std::invalid_argument("isometry must be d^2 x d");
        if ((v.adjoint() * v - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
            throw std::invalid_argument("isometry columns are not orthonormal");
        chan.apply = [p, v, d](const Mat& rho) -> Mat {
            Mat w = v * rho * v.adjoint();
            return p * rho + (1.0 - p) * partial_trace_second(w, d);
        };
        if (d <= kDenseDimCap) {
            Mat s = Mat::Zero(d * d, d * d);
            Mat eij = Mat::Zero(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    eij(i, j) = 1.0;
                    s.col(j * d + i) = vectorize(chan.apply(eij));
                    eij(i, j) = 0.0;
                }
            chan.superop = std::move(s);
        }
        return chan;
    }
    if (const auto* uc = std::get_if<UnitaryConjugation>(&model)) {
        Mat u = uc->u;
        chan.apply = [u](const Mat& rho) -> Mat { return u * rho * u.adjoint(); };
        if (d <= kDenseDimCap) chan.superop = adjoint_channel(u);
        return chan;
    }
    const auto& dc = std::get<DeltaCovariant>(model);
    if (dc.delta < 0.0 || dc.delta > 1.0)
        throw std::invalid_argument("delta must lie in [0, 1]");
    NoiseChannel cov = make_noise(*dc.covariant_part, d, rng);
    NoiseChannel noi = make_noise(*dc.noise_part, d, rng);
    const double delta = dc.delta;
    chan.apply = [delta, cov, noi](const Mat& rho) -> Mat {
        return (1.0 - delta) * cov.apply(rho) + delta * noi.apply(rho);
    };
    if (cov.superop && noi.superop)
        chan.superop = (1.0 - delta) * *cov.superop + delta * *noi.superop;
    return chan;
}

double sequence_fidelity(const Mat& rho, const Mat& effect,
                         const std::vector<std::function<Mat(const Mat&)>>& ops) {
    if (rho.rows() != effect.rows()) throw std::invalid_argument("state/effect dim mismatch");
    Mat state = rho;
    for (const auto& op : ops) state = op(state);
    return (state * effect).trace().real();
}

}  // namespace rbsim
