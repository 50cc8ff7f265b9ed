#include "minkolab/geometry.hpp"

#include <algorithm>
#include <random>

namespace minkolab {

// mt19937_64 by hand (same constants as std::mt19937_64) to keep the raw
// 64-bit stream available without distribution wrappers.
namespace {
constexpr int kN = 312;
constexpr int kM = 156;
constexpr std::uint64_t kMatrixA = 0xB5026F5AA96619E9ULL;
constexpr std::uint64_t kUpperMask = 0xFFFFFFFF80000000ULL;
constexpr std::uint64_t kLowerMask = 0x7FFFFFFFULL;

std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace

Rng::Rng(std::uint64_t seed) {
    state_[0] = seed;
    for (int i = 1; i < kN; ++i) {
        state_[i] = 6364136223846793005ULL * (state_[i - 1] ^ (state_[i - 1] >> 62)) +
                    static_cast<std::uint64_t>(i);
    }
    index_ = kN;
}

std::uint64_t Rng::next_raw() {
    if (index_ >= kN) {
        for (int i = 0; i < kN; ++i) {
            std::uint64_t v = (state_[i] & kUpperMask) | (state_[(i + 1) % kN] & kLowerMask);
            state_[i] = state_[(i + kM) % kN] ^ (v >> 1);
            if (v & 1ULL) state_[i] ^= kMatrixA;
        }
        index_ = 0;
    }
    std::uint64_t x = state_[index_++];
    x ^= (x >> 29) & 0x5555555555555555ULL;
    x ^= (x << 17) & 0x71D67FFFEDA60000ULL;
    x ^= (x << 37) & 0xFFF7EEE000000000ULL;
    x ^= x >> 43;
    return x;
}

double Rng::uniform() { return static_cast<double>(next_raw() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform() * (static_cast<double>(hi - lo) + 1.0));
}

Vec Rng::unit_vector(int dim) {
    if (dim == 2) {
        double ang = uniform(0.0, 2.0 * M_PI);
        return {std::cos(ang), std::sin(ang), 0.0};
    }
    double zc = uniform(-1.0, 1.0);
    double ang = uniform(0.0, 2.0 * M_PI);
    double r = std::sqrt(std::max(0.0, 1.0 - zc * zc));
    return {r * std::cos(ang), r * std::sin(ang), zc};
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t s = a;
    std::uint64_t h = splitmix64(s);
    s ^= b + 0x9E3779B97F4A7C15ULL + (h << 6);
    h ^= splitmix64(s);
    s ^= c + 0x9E3779B97F4A7C15ULL + (h << 6);
    h ^= splitmix64(s);
    return h;
}

std::vector<Vec> fibonacci_sphere(int n) {
    std::vector<Vec> pts;
    pts.reserve(n);
    const double dz = 2.0 / n;
    const double dtheta = M_PI * (std::sqrt(5.0) + 1.0);
    double zc = -1.0 + 0.5 * dz;
    double theta = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = std::sqrt(std::max(0.0, 1.0 - zc * zc));
        pts.emplace_back(r * std::cos(theta), r * std::sin(theta), zc);
        zc += dz;
        theta += dtheta;
    }
    return pts;
}

std::vector<Vec> circle_directions(int n, double phase) {
    std::vector<Vec> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        double a = phase + 2.0 * M_PI * i / n;
        pts.emplace_back(std::cos(a), std::sin(a), 0.0);
    }
    return pts;
}

bool solve2x2(const double a[4], const double b[2], double out[2]) {
    double det = a[0] * a[3] - a[1] * a[2];
    if (det == 0.0) return false;
    out[0] = (b[0] * a[3] - b[1] * a[1]) / det;
    out[1] = (a[0] * b[1] - a[2] * b[0]) / det;
    return true;
}

bool solve3x3(const double a[9], const double b[3], double out[3]) {
    double d0 = a[4] * a[8] - a[5] * a[7];
    double d1 = a[3] * a[8] - a[5] * a[6];
    double d2 = a[3] * a[7] - a[4] * a[6];
    double det = a[0] * d0 - a[1] * d1 + a[2] * d2;
    if (det == 0.0) return false;
    out[0] = (b[0] * d0 - a[1] * (b[1] * a[8] - a[5] * b[2]) + a[2] * (b[1] * a[7] - a[4] * b[2])) / det;
    out[1] = (a[0] * (b[1] * a[8] - a[5] * b[2]) - b[0] * d1 + a[2] * (a[3] * b[2] - b[1] * a[6])) / det;
    out[2] = (a[0] * (a[4] * b[2] - b[1] * a[7]) - a[1] * (a[3] * b[2] - b[1] * a[6]) + b[0] * d2) / det;
    return true;
}

bool cholesky_solve(std::vector<double>& a, std::vector<double>& b, int n) {
    // Lower-triangular factorization in place.
    for (int j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (int k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
        if (!(d > 0.0)) return false;
        d = std::sqrt(d);
        a[j * n + j] = d;
        for (int i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (int k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = s / d;
        }
    }
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= a[i * n + k] * b[k];
        b[i] = s / a[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int k = i + 1; k < n; ++k) s -= a[k * n + i] * b[k];
        b[i] = s / a[i * n + i];
    }
    return true;
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace minkolab
