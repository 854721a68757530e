// Xi values on leafless classes and the resulting dual norm, on both sides of the
// Kesten-Stigum line eps^2 lambda = 1, next to the exact reversed advantage.

#include "lowdeg/certificate/duality.hpp"

#include <cstdio>

using namespace lowdeg;

int main() {
    const int n = 6, D = 5;
    for (const Rational& eps : {Rational(3, 10), Rational(7, 10)}) {
        // lambda = n/2 makes the b part of h vanish, so Xi is zero on the diamond (two degree-3 vertices)
        const Rational lambda(3);
        const auto m = ModelParams::sbm(n, 2, lambda, eps);
        std::printf("eps=%.2f lambda=%.2f eps^2*lambda=%.3f\n", to_double(eps), to_double(lambda), to_double(eps * eps * lambda));
        const auto u = build_dual<Surd>(m, D, StepConvention::exact);
        for (const auto& c : u.classes)
            std::printf("  %-40s copies %-6s Xi % .3e\n", c.graph.representative.edge_induced().str().c_str(), c.copies.str().c_str(),
                        c.xi.to_double());
        std::printf("  ||u|| = %.6f\n", u.norm());
    }
    // the sandwich at n = 4 where the reversed advantage is still enumerable
    for (int D = 1; D <= 3; ++D) {
        const auto gap = duality_gap(ModelParams::sbm(4, 2, Rational(1), Rational(2, 5)), D);
        std::printf("n=4 D=%d  Adv(dQ/dP)=%.6f  ||u||=%.6f  leading-step ||u||=%.6f\n", D, gap.exact, gap.dual_norm,
                    gap.dual_norm_leading);
    }
}
