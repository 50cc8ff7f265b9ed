#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace minkolab {

// Small fixed-size vector used for points and directions in dimensions 2 and 3.
// 2D data leaves z at zero; the owning object carries the dimension.
struct Vec {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec() = default;
    Vec(double x_, double y_, double z_ = 0.0) : x(x_), y(y_), z(z_) {}

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec operator+(const Vec& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec operator-(const Vec& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec operator-() const { return {-x, -y, -z}; }
    Vec operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec& operator+=(const Vec& o) {
        x += o.x; y += o.y; z += o.z;
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }
    Vec& operator*=(double s) {
        x *= s; y *= s; z *= s;
        return *this;
    }

    double dot(const Vec& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec cross(const Vec& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    Vec normalized() const {
        double n = norm();
        return {x / n, y / n, z / n};
    }
    // 90-degree counterclockwise rotation in the plane.
    Vec perp2() const { return {-y, x, 0.0}; }
};

inline Vec operator*(double s, const Vec& v) { return v * s; }

// Deterministic RNG. Uses the standardized mt19937_64 stream so identical
// seeds reproduce identical experiments on every platform; distributions are
// hand-rolled because the std ones are implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    double uniform();  // [0, 1)
    double uniform(double a, double b);
    int uniform_int(int lo, int hi);  // inclusive
    Vec unit_vector(int dim);

  private:
    std::uint64_t next_raw();
    std::uint64_t state_[312];
    int index_;
};

// Combines seed components into one stream seed (splitmix64 chain).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c);

// Quasi-uniform points on the unit sphere via the golden-section spiral.
std::vector<Vec> fibonacci_sphere(int n);

// Uniform directions on the unit circle.
std::vector<Vec> circle_directions(int n, double phase = 0.0);

// Dense linear solves for the small systems used throughout.
bool solve2x2(const double a[4], const double b[2], double out[2]);
bool solve3x3(const double a[9], const double b[3], double out[3]);

// In-place Cholesky solve of a dense SPD system (row-major A, size n x n).
bool cholesky_solve(std::vector<double>& a, std::vector<double>& b, int n);

double median(std::vector<double> values);

}  // namespace minkolab
