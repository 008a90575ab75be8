// Builds a witness for x^2 + 1 as a square, checks it, then specializes eps.

#include <polyiter/polyiter.hpp>

#include <iostream>

using namespace polyiter;

int main() {
    const Field f = Field::rationals();
    const ScalarPoly q = parse_poly("1,0,1", f);

    ConstructionData d = build_P(q, 2);
    std::cout << "Q = " << q << "\nP = " << d.P << "\n";

    const VerificationReport key = verify_key_congruence(d);
    std::cout << "P o P == Q mod eps: " << (key.passed ? "yes" : "no") << " (" << key.mode << ")\n";

    const LemmaReport lemmas = verify_lemma_suite(d);
    std::cout << lemmas.checks.size() << " identities checked, " << lemmas.failures() << " failed\n";

    for (const char* e : {"1/100", "1/1000", "1/10000"}) {
        const Scalar eps = Scalar::parse(e, f);
        const mpq_class err = sup_norm(error_polynomial(d, eps), Place::archimedean());
        std::cout << "eps = " << e << "  |P_eps o P_eps - Q| = " << err.get_d() << "\n";
    }

    const auto census = census::enumerate_iterates(2, 4, 2);
    std::cout << "squares of degree <= 4 over F_2: " << census.row.count << "\n";
    return key.passed && lemmas.passed() ? 0 : 1;
}
