#include "cnoma/rng.hpp"

#include <cmath>

namespace cnoma {

std::pair<double, double> RandomStream::next_normal_pair() {
    // Box-Muller on explicit uniforms keeps the stream portable and
    // bit-reproducible (no library-defined normal transform involved).
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

void CompensatedSum::add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
        comp += (sum - t) + v;
    else
        comp += (v - t) + sum;
    sum = t;
}

} // namespace cnoma
