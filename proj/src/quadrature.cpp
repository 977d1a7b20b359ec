#include "pelastica/quadrature.hpp"

namespace pelastica::quad {

double beta(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) {
        throw std::domain_error("beta: arguments must be positive");
    }
    // Split at 1/2. On [0,1/2] substitute u = t^x so that
    // t^{x-1} dt = du/x; the remaining factor (1-u^{1/x})^{y-1} is smooth
    // since u^{1/x} <= 1/2. Same with roles swapped on [1/2,1].
    auto lower = [x, y](double u) {
        return std::pow(1.0 - std::pow(u, 1.0 / x), y - 1.0);
    };
    auto upper = [x, y](double u) {
        return std::pow(1.0 - std::pow(u, 1.0 / y), x - 1.0);
    };
    const double a = adaptive(lower, 0.0, std::pow(0.5, x), 1e-14) / x;
    const double b = adaptive(upper, 0.0, std::pow(0.5, y), 1e-14) / y;
    return a + b;
}

}  // namespace pelastica::quad
