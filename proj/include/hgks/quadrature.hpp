#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace hgks {

/// Gauss-Legendre rule on [-1, 1]; an m-point rule integrates polynomials of
/// degree <= 2m-1 exactly.
struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;

    static QuadRule gauss(int m) {
        QuadRule q;
        switch (m) {
            case 1:
                q.x = {0.0};
                q.w = {2.0};
                break;
            case 2: {
                const double a = 1.0 / std::sqrt(3.0);
                q.x = {-a, a};
                q.w = {1.0, 1.0};
                break;
            }
            case 3: {
                const double a = std::sqrt(3.0 / 5.0);
                q.x = {-a, 0.0, a};
                q.w = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
                break;
            }
            case 4: {
                const double s = std::sqrt(6.0 / 5.0);
                const double a = std::sqrt((3.0 - 2.0 * s) / 7.0);
                const double b = std::sqrt((3.0 + 2.0 * s) / 7.0);
                const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
                const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
                q.x = {-b, -a, a, b};
                q.w = {wb, wa, wa, wb};
                break;
            }
            case 5: {
                const double s = std::sqrt(10.0 / 7.0);
                const double a = std::sqrt(5.0 - 2.0 * s) / 3.0;
                const double b = std::sqrt(5.0 + 2.0 * s) / 3.0;
                const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
                const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
                q.x = {-b, -a, 0.0, a, b};
                q.w = {wb, wa, 128.0 / 225.0, wa, wb};
                break;
            }
            default:
                throw std::invalid_argument("QuadRule::gauss: unsupported point count");
        }
        return q;
    }

    int size() const { return static_cast<int>(x.size()); }
};

}  // namespace hgks
