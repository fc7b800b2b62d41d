#include "posred/cli/generator.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

namespace posred::cli {

namespace {

// Portable uniform [0, 1): std distributions are implementation-defined.
class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : rng_(seed) {}

    double operator()() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    double operator()(double lo, double hi) { return lo + (hi - lo) * (*this)(); }
    Index below(Index bound) {
        return std::min<Index>(static_cast<Index>((*this)() * static_cast<double>(bound)), bound - 1);
    }

private:
    std::mt19937_64 rng_;
};

Matrix sparse_block(Uniform& u, Index rows, Index cols, double density) {
    Matrix m = Matrix::Zero(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            if (density >= 1.0 || u() < density) {
                m(i, j) = u(0.1, 1.0);
            }
        }
    }
    return m;
}

// Input blocks: an all-zero column would make that input inert.
Matrix input_block(Uniform& u, Index rows, Index cols, double density) {
    Matrix m = sparse_block(u, rows, cols, density);
    for (Index j = 0; j < cols; ++j) {
        if (rows > 0 && m.col(j).isZero(0.0)) {
            m(u.below(rows), j) = u(0.1, 1.0);
        }
    }
    return m;
}

std::vector<Index> permutation(Uniform& u, Index n) {
    std::vector<Index> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), Index{0});
    for (Index i = n - 1; i > 0; --i) {
        std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(u.below(i + 1))]);
    }
    return p;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void GeneratorSpec::validate() const {
    if (n < 1 || inputs < 1 || outputs < 1) {
        throw Error(ErrorKind::InvalidArgument, "generator: n, inputs and outputs must be positive");
    }
    if (!(density > 0.0 && density <= 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "generator: density must lie in (0, 1]");
    }
    if (reachable_dim && (*reachable_dim < 1 || *reachable_dim > n)) {
        throw Error(ErrorKind::InvalidArgument, "generator: reachable_dim must lie in [1, n]");
    }
}

PositiveLtiSystem generate_system(const GeneratorSpec& spec) {
    spec.validate();
    Uniform u(splitmix64(spec.seed));
    const Index n = spec.n;
    const Index m = spec.inputs;

    Matrix a;
    Matrix b;
    if (!spec.reachable_dim) {
        a = sparse_block(u, n, n, spec.density);
        b = input_block(u, n, m, spec.density);
    } else {
        const Index q = *spec.reachable_dim;
        LiftKind kind = spec.lift;
        if (kind == LiftKind::Random) {
            kind = static_cast<LiftKind>(1 + u.below(3));
        }
        const Index r = kind == LiftKind::Identity ? q : 1 + u.below(q);

        Matrix lift;
        switch (kind) {
            case LiftKind::Identity:
                lift = Matrix::Identity(q, q);
                break;
            case LiftKind::Monotone: {
                Matrix stacked(q, r);
                stacked << Matrix::Identity(r, r), sparse_block(u, q - r, r, spec.density);
                const std::vector<Index> perm = permutation(u, q);
                lift.resize(q, r);
                for (Index i = 0; i < q; ++i) {
                    lift.row(perm[static_cast<std::size_t>(i)]) = stacked.row(i);
                }
                break;
            }
            case LiftKind::Generic:
            case LiftKind::Random:
                lift = sparse_block(u, q, r, 1.0);
                break;
        }

        a = Matrix::Zero(n, n);
        b = Matrix::Zero(n, m);
        const Matrix mix = sparse_block(u, r, q, spec.density);
        a.topLeftCorner(q, q) = lift * mix;
        a.topRightCorner(q, n - q) = sparse_block(u, q, n - q, spec.density);
        a.bottomRightCorner(n - q, n - q) = sparse_block(u, n - q, n - q, spec.density);
        b.topRows(q) = lift * input_block(u, r, m, spec.density);
    }
    const Matrix c = sparse_block(u, spec.outputs, n, spec.density);

    const double row_sum = a.rowwise().sum().maxCoeff();
    if (row_sum > 0.0) {
        a /= row_sum;
    }

    const std::vector<Index> perm = permutation(u, n);
    Matrix pa(n, n);
    Matrix pb(n, m);
    Matrix pc(spec.outputs, n);
    for (Index i = 0; i < n; ++i) {
        const Index pi = perm[static_cast<std::size_t>(i)];
        pb.row(pi) = b.row(i);
        pc.col(pi) = c.col(i);
        for (Index j = 0; j < n; ++j) {
            pa(pi, perm[static_cast<std::size_t>(j)]) = a(i, j);
        }
    }
    return PositiveLtiSystem(std::move(pa), std::move(pb), std::move(pc));
}

}  // namespace posred::cli
