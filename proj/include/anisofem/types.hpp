#pragma once

#include <cmath>

namespace anisofem {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

using Point = Vec2;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Row-major 2x2 matrix.
struct Mat2 {
    double xx = 0.0, xy = 0.0;
    double yx = 0.0, yy = 0.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    friend constexpr Mat2 operator+(const Mat2& a, const Mat2& b) {
        return {a.xx + b.xx, a.xy + b.xy, a.yx + b.yx, a.yy + b.yy};
    }
    friend constexpr Mat2 operator*(double s, const Mat2& a) {
        return {s * a.xx, s * a.xy, s * a.yx, s * a.yy};
    }
    friend constexpr Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {a.xx * b.xx + a.xy * b.yx, a.xx * b.xy + a.xy * b.yy,
                a.yx * b.xx + a.yy * b.yx, a.yx * b.xy + a.yy * b.yy};
    }
    friend constexpr Vec2 operator*(const Mat2& a, Vec2 v) {
        return {a.xx * v.x + a.xy * v.y, a.yx * v.x + a.yy * v.y};
    }
};

constexpr Mat2 outer(Vec2 a, Vec2 b) { return {a.x * b.x, a.x * b.y, a.y * b.x, a.y * b.y}; }

}  // namespace anisofem
