// Level-2 double zeta values at a chosen precision, with the regularization variable T kept formal.

#include "des2/numeric_mzv.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    using namespace des2;
    const int digits = argc > 1 ? std::stoi(argv[1]) : 30;
    MzvEvaluator ev(digits);
    for (PairKind kind : {PairKind::oo, PairKind::oe, PairKind::eo})
        for (auto [r, s] : {std::pair{1, 2}, {2, 2}, {3, 2}, {2, 3}}) {
            auto v = ev.regularized(kind, r, s);
            std::cout << "zeta^" << kind_name(kind) << "(" << r << "," << s << ") = " << format_real(v.c0, digits);
            if (!v.convergent()) std::cout << " + (" << format_real(v.c1, digits) << ") T";
            std::cout << '\n';
        }
    auto sum = verify_sum_formula_numeric(8, digits);
    std::cout << sum.name << ": " << (sum.pass() ? "pass" : "FAIL") << '\n';
    return sum.pass() ? 0 : 1;
}
