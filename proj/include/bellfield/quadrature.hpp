#pragma once

#include <functional>
#include <vector>

namespace bellfield {

// Gauss-Legendre rule on [-1, 1]; nodes/weights computed by Newton
// iteration on the Legendre polynomial and cached per order.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(int order);

// integrate f over [a, b] with a single Gauss-Legendre panel
double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int order);

// composite: [a, b] split into equal panels
double integrate_gl_panels(const std::function<double(double)>& f, double a,
                           double b, int panels, int order);

// Wynn epsilon algorithm on a sequence of partial sums.  Returns the
// accelerated limit; err_est (optional) receives the spread of the two
// deepest even-column estimates, which tracks the actual error well for
// alternating sequences.
double wynn_epsilon(const std::vector<double>& partial_sums,
                    double* err_est = nullptr);

}  // namespace bellfield
