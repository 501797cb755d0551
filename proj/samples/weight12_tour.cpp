// A short walk through weight 12: the level-2 matrix Q_12, its kernel as period polynomials,
// the first tau values from a double Eisenstein identity, and one double shuffle check.

#include "des2/double_eisenstein.hpp"
#include "des2/modforms_level2.hpp"
#include "des2/period_poly.hpp"

#include <iostream>

int main()
{
    using namespace des2;

    const QMatrix Q = qk_matrix(12, 2).matrix;
    std::cout << "Q_12 (rank " << Q.rank() << "):\n";
    for (std::size_t i = 0; i < Q.rows(); ++i) {
        std::cout << "  ";
        for (const auto& x : Q.row(i)) std::cout << to_string(x) << ' ';
        std::cout << '\n';
    }

    std::cout << "kernel polynomials:\n";
    for (const auto& p : qk_kernel_polynomials(12, 2)) {
        std::cout << "  ";
        for (int e = p.max_degree(); e >= 0; --e)
            if (sgn(p.coeff(e)) != 0) std::cout << to_string(p.coeff(e)) << "*x^" << e << ' ';
        std::cout << (in_wk(p) ? " (in W_12)" : " (not in W_12)") << '\n';
    }

    std::cout << "tau(n), n = 1..10:";
    for (long n = 1; n <= 10; ++n) std::cout << ' ' << to_string(tau_formula(1, n));
    std::cout << '\n';

    auto rep = verify_theorem3(5, 7, 20);
    std::cout << rep.name << ": " << (rep.pass() ? "pass" : "FAIL") << " (" << rep.checks.size() << " checks)\n";
    return rep.pass() ? 0 : 1;
}
