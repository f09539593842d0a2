#pragma once

#include <cmath>

namespace hetsim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double distance(const Vec2& a, const Vec2& b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline double deg_to_rad(double deg) { return deg * M_PI / 180.0; }

} // namespace hetsim
