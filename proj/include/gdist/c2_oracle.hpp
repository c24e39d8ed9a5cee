#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "gdist/errors.hpp"
#include "gdist/graph.hpp"

namespace gdist {

inline long sdpBudget() { return envBudget("GDIST_SDP_BUDGET", 128); }

enum class C2Status { Converged, IterationCap };

inline const char* toString(C2Status s) { return s == C2Status::Converged ? "converged" : "iteration-cap"; }

struct C2Result {
    double value = 0.0;  // distortion of an explicit Euclidean embedding
    double lower = 1.0;  // certified lower bound
    C2Status status = C2Status::Converged;
    int probes = 0;
    long iterations = 0;
    std::vector<std::vector<double>> points;  // embedding attaining value
};

struct C2Options {
    double tol = 1e-3;
    int maxProbes = 60;
    int probeIterations = 3000;
    int checkEvery = 10;
    int andersonMemory = 8;
    double andersonSafeguard = 2.0;
    long budget = sdpBudget();
};

namespace detail {

using Mat = Eigen::MatrixXd;

// Type-II Anderson mixing over matrices viewed as vectors.
class Anderson {
public:
    Anderson(Eigen::Index dim, int memory) : dim_(dim), memory_(memory) {}

    void reset() {
        xs_.clear();
        rs_.clear();
    }
    bool empty() const { return xs_.size() < 2; }

    // Given x and T(x), returns the mixed next iterate.
    Mat step(const Mat& x, const Mat& tx) {
        Eigen::VectorXd xv = Eigen::Map<const Eigen::VectorXd>(x.data(), dim_);
        Eigen::VectorXd rv = Eigen::Map<const Eigen::VectorXd>(tx.data(), dim_) - xv;
        xs_.push_back(xv);
        rs_.push_back(rv);
        if (static_cast<int>(xs_.size()) > memory_ + 1) {
            xs_.erase(xs_.begin());
            rs_.erase(rs_.begin());
        }
        const int m = static_cast<int>(xs_.size()) - 1;
        if (m < 1 || memory_ < 1) return tx;
        Mat dx(dim_, m), dr(dim_, m);
        for (int i = 0; i < m; ++i) {
            dx.col(i) = xs_[i + 1] - xs_[i];
            dr.col(i) = rs_[i + 1] - rs_[i];
        }
        Eigen::VectorXd gamma = dr.colPivHouseholderQr().solve(rv);
        if (!gamma.allFinite()) return tx;
        Eigen::VectorXd out = xv + rv - (dx + dr) * gamma;
        return Eigen::Map<const Mat>(out.data(), x.rows(), x.cols());
    }

private:
    Eigen::Index dim_;
    int memory_;
    std::vector<Eigen::VectorXd> xs_, rs_;
};

// Accelerated iteration of a fixed-point map, rejecting extrapolations that
// grow the residual by more than the safeguard factor.
class FixedPointRun {
public:
    FixedPointRun(Eigen::Index dim, int memory, double safeguard) : accel_(dim, memory), safeguard_(safeguard) {}

    template <class Map>
    void start(Mat x0, Map&& map) {
        accel_.reset();
        x_ = std::move(x0);
        tx_ = map(x_);
        resid_ = (tx_ - x_).norm();
    }

    template <class Map>
    void step(Map&& map) {
        Mat next = accel_.step(x_, tx_);
        Mat tn = map(next);
        double rn = (tn - next).norm();
        if (rn > safeguard_ * resid_ && !accel_.empty()) {
            accel_.reset();
            next = tx_;
            tn = map(next);
            rn = (tn - next).norm();
        }
        x_ = std::move(next);
        tx_ = std::move(tn);
        resid_ = rn;
    }

    const Mat& current() const { return x_; }
    const Mat& image() const { return tx_; }

private:
    Anderson accel_;
    double safeguard_;
    Mat x_, tx_;
    double resid_ = 0.0;
};

// Sets used by the oracle, all over symmetric n x n matrices. A Householder
// reflection H sends the all-ones vector to a multiple of e_n, so that
// {D : -JDJ psd} becomes "leading (n-1) block of HDH negative semidefinite"
// and {Q psd : Q1 = 0} becomes "HQH psd and zero in the last row/column".
class EdmGeometry {
public:
    explicit EdmGeometry(const Mat& d2) : d2_(d2), n_(static_cast<int>(d2.rows())) {
        u_ = Eigen::VectorXd::Ones(n_);
        u_(n_ - 1) += std::sqrt(static_cast<double>(n_));
        uu_ = u_.squaredNorm();
    }

    Mat reflect(const Mat& x) const {
        Mat y = x - (2.0 / uu_) * u_ * (u_.transpose() * x);
        return y - (2.0 / uu_) * (y * u_) * u_.transpose();
    }

    // Primal cone {D : -JDJ psd}.
    Mat projectEdmCone(const Mat& d) {
        Mat a = reflect(d);
        const int m = n_ - 1;
        solver_.compute(a.topLeftCorner(m, m));
        Eigen::VectorXd lam = solver_.eigenvalues().cwiseMin(0.0);
        a.topLeftCorner(m, m) = solver_.eigenvectors() * lam.asDiagonal() * solver_.eigenvectors().transpose();
        return reflect(a);
    }

    // Primal box {d^2 <= D_ij <= c^2 d^2, D_ii = 0}.
    Mat projectBox(const Mat& d, double c2) const {
        Mat b = d;
        for (int j = 0; j < n_; ++j) {
            for (int i = 0; i < n_; ++i) {
                b(i, j) = i == j ? 0.0 : std::clamp(d(i, j), d2_(i, j), c2 * d2_(i, j));
            }
        }
        return b;
    }

    // Dual cone {Q psd : Q1 = 0}, or its trace-one slice when normalized.
    Mat projectCertificateCone(const Mat& q, bool normalized = false) {
        Mat a = reflect(q);
        const int m = n_ - 1;
        a.row(m).setZero();
        a.col(m).setZero();
        solver_.compute(a.topLeftCorner(m, m));
        Eigen::VectorXd lam = normalized ? simplexProjection(solver_.eigenvalues())
                                         : Eigen::VectorXd(solver_.eigenvalues().cwiseMax(0.0));
        a.topLeftCorner(m, m) = solver_.eigenvectors() * lam.asDiagonal() * solver_.eigenvectors().transpose();
        return reflect(a);
    }

    // Dual cone {Q : sum_{i != j} d^2 phi(Q_ij) >= 0} with phi(t) = t for
    // t >= 0 and c^2 t below. phi is concave, so the projection shifts every
    // entry along phi's supergradient with one multiplier found by bisection.
    Mat projectRatioSet(const Mat& q, double c2) const {
        if (ratioObjective(q, c2) >= 0.0) return q;
        auto shifted = [&](double mu) {
            Mat r = q;
            for (int j = 0; j < n_; ++j) {
                for (int i = 0; i < n_; ++i) {
                    if (i == j) continue;
                    const double w = d2_(i, j), v = q(i, j);
                    if (v + mu * w > 0.0) r(i, j) = v + mu * w;
                    else if (v + mu * c2 * w < 0.0) r(i, j) = v + mu * c2 * w;
                    else r(i, j) = 0.0;
                }
            }
            return r;
        };
        double lo = 0.0, hi = q.cwiseAbs().maxCoeff() / d2_.maxCoeff() + 1e-300;
        while (ratioObjective(shifted(hi), c2) < 0.0) hi *= 2.0;
        for (int it = 0; it < 100 && hi - lo > 1e-15 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (ratioObjective(shifted(mid), c2) < 0.0 ? lo : hi) = mid;
        }
        return shifted(hi);
    }

    double ratioObjective(const Mat& q, double c2) const {
        double s = 0.0;
        for (int j = 0; j < n_; ++j)
            for (int i = 0; i < n_; ++i)
                if (i != j) s += d2_(i, j) * (q(i, j) >= 0.0 ? q(i, j) : c2 * q(i, j));
        return s;
    }

    // Distortion of the embedding with Gram matrix -1/2 JKJ, K a cone point.
    double embeddingDistortion(const Mat& k, Mat* gram) const {
        Mat g = -0.5 * centered(k);
        double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
        for (int i = 0; i < n_; ++i) {
            for (int j = i + 1; j < n_; ++j) {
                const double r = (g(i, i) + g(j, j) - 2.0 * g(i, j)) / d2_(i, j);
                rmin = std::min(rmin, r);
                rmax = std::max(rmax, r);
            }
        }
        if (gram) *gram = std::move(g);
        if (!(rmin > 0.0)) return std::numeric_limits<double>::infinity();
        return std::sqrt(rmax / rmin);
    }

    // For Q psd with Q1 = 0, sum_ij Q_ij D_ij <= 0 on every squared
    // Euclidean distance matrix D, so every embedding has
    // c^2 >= sum_{Q>0} Q d^2 / sum_{Q<0} |Q| d^2. The input is first
    // projected onto that cone.
    double certificate(const Mat& q) {
        Mat p = projectCertificateCone(q);
        double pos = 0.0, neg = 0.0;
        for (int j = 0; j < n_; ++j) {
            for (int i = 0; i < n_; ++i) {
                if (i == j) continue;
                if (p(i, j) > 0.0) pos += p(i, j) * d2_(i, j);
                else neg -= p(i, j) * d2_(i, j);
            }
        }
        if (!(neg > 0.0) || !(pos > 0.0)) return 1.0;
        return std::max(1.0, std::sqrt(pos / neg));
    }

private:
    // Euclidean projection onto {x >= 0, sum x = 1}.
    static Eigen::VectorXd simplexProjection(const Eigen::VectorXd& v) {
        std::vector<double> u(v.data(), v.data() + v.size());
        std::sort(u.begin(), u.end(), std::greater<>());
        double cum = 0.0, theta = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            cum += u[i];
            const double t = (cum - 1.0) / static_cast<double>(i + 1);
            if (u[i] - t > 0.0) theta = t;
        }
        return (v.array() - theta).cwiseMax(0.0).matrix();
    }

    Mat centered(const Mat& x) const {
        Eigen::VectorXd rm = x.rowwise().mean();
        Eigen::RowVectorXd cm = x.colwise().mean();
        const double all = x.mean();
        Mat y = x;
        y.colwise() -= rm;
        y.rowwise() -= cm;
        y.array() += all;
        return y;
    }

    Mat d2_;
    int n_;
    Eigen::VectorXd u_;
    double uu_;
    Eigen::SelfAdjointEigenSolver<Mat> solver_;
};

inline std::vector<std::vector<double>> pointsFromGram(const Mat& g) {
    Eigen::SelfAdjointEigenSolver<Mat> es(g);
    const int n = static_cast<int>(g.rows());
    const double top = std::max(es.eigenvalues().maxCoeff(), 0.0);
    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
        if (es.eigenvalues()(i) > 1e-12 * top) keep.push_back(i);
    std::vector<std::vector<double>> pts(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        for (int i : keep) pts[x].push_back(es.eigenvectors()(x, i) * std::sqrt(es.eigenvalues()(i)));
    }
    return pts;
}

}  // namespace detail

// Least Euclidean distortion c2 of a finite metric. Bisection on C; at each
// probe two accelerated alternating-projection runs are advanced together:
// one between the box {d^2 <= D <= C^2 d^2} and the squared-distance cone,
// whose iterates give explicit embeddings (upper bounds), and one between
// trace-one certificates {Q psd, Q1 = 0} and the ratio cone, whose iterates
// give dual certificates (lower bounds). Stops once the certified bracket is
// narrower than tol and returns the upper end.
inline C2Result exactC2(const DistanceMatrix& dm, const C2Options& opt = {}) {
    const int n = dm.vertexCount();
    if (n > opt.budget) {
        throw BudgetExceeded("exact c2 requested for " + std::to_string(n) + " vertices, above the SDP budget of " +
                             std::to_string(opt.budget));
    }
    if (!(opt.tol > 0.0)) throw ValidationError("tolerance must be positive");
    C2Result res;
    if (n <= 2) {
        res.value = 1.0;
        if (n == 2) res.points = {{0.0}, {1.0}};
        else if (n == 1) res.points = {{0.0}};
        return res;
    }

    detail::Mat d2(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d2(i, j) = static_cast<double>(dm(i, j)) * dm(i, j);
    detail::EdmGeometry geo(d2);

    // The regular simplex has distortion diam.
    double lo = 1.0, hi = dm.diameter();
    detail::Mat bestGram = detail::Mat::Identity(n, n) * 0.5;
    const Eigen::Index dim = static_cast<Eigen::Index>(n) * n;
    detail::FixedPointRun primal(dim, opt.andersonMemory, opt.andersonSafeguard);
    detail::FixedPointRun dual(dim, opt.andersonMemory, opt.andersonSafeguard);
    detail::Mat primalStart = d2;
    detail::Mat dualStart = detail::Mat::Zero(n, n);

    while (hi - lo > opt.tol) {
        if (res.probes >= opt.maxProbes) {
            res.status = C2Status::IterationCap;
            break;
        }
        ++res.probes;
        const double c = 0.5 * (lo + hi), c2 = c * c;
        const double slack = 0.25 * opt.tol;
        auto primalMap = [&](const detail::Mat& x) { return geo.projectBox(geo.projectEdmCone(x), c2); };
        auto dualMap = [&](const detail::Mat& x) { return geo.projectRatioSet(geo.projectCertificateCone(x, true), c2); };
        primal.start(primalStart, primalMap);
        dual.start(dualStart, dualMap);
        bool decided = false;
        for (int it = 1; it <= opt.probeIterations; ++it) {
            primal.step(primalMap);
            dual.step(dualMap);
            ++res.iterations;
            if (it % opt.checkEvery != 0) continue;
            detail::Mat gram;
            const detail::Mat cone = geo.projectEdmCone(primal.current());
            const double up = geo.embeddingDistortion(cone, &gram);
            if (up < hi) {
                hi = up;
                bestGram = std::move(gram);
            }
            // The primal gap x - P(x) lies in the polar of the cone, which is
            // the certificate cone; the dual run supplies a second candidate.
            lo = std::max({lo, geo.certificate(primal.current() - cone), geo.certificate(dual.current())});
            if (hi <= c + slack || lo >= c - slack || hi - lo <= opt.tol) {
                decided = true;
                break;
            }
        }
        primalStart = primal.image();
        dualStart = dual.image();
        if (!decided) {
            res.status = C2Status::IterationCap;
            break;
        }
    }
    res.value = hi;
    res.lower = std::min(lo, hi);
    res.points = detail::pointsFromGram(bestGram);
    return res;
}

}  // namespace gdist
