#include "nopo/model.hpp"

namespace nopo {

void validate(const SystemParams& p) {
    if (!(p.kappa_a > 0.0) || !(p.kappa_b > 0.0) || !(p.kappa_c > 0.0)) {
        throw InvalidConfig("SystemParams: decay rates must be positive");
    }
    if (p.g < 0.0 || p.E < 0.0) {
        throw InvalidConfig("SystemParams: g and E must be nonnegative");
    }
}

Operator hamiltonian(const HilbertSpace& space, const SystemParams& p) {
    validate(p);
    const Operator a = annihilation(space, Mode::a);
    const Operator b = annihilation(space, Mode::b);
    const Operator c = annihilation(space, Mode::c);

    Operator h = scale(p.delta_a, number_operator(space, Mode::a));
    h = add(h, scale(p.delta_b, number_operator(space, Mode::b)));
    h = add(h, scale(p.delta_c, number_operator(space, Mode::c)));

    // a b^dag c^dag plus its adjoint; summing the pair keeps H exactly
    // Hermitian entry by entry.
    const Operator pair_term = compose(a, compose(adjoint(b), adjoint(c)));
    h = add(h, scale(p.g, add(pair_term, adjoint(pair_term))));
    h = add(h, scale(p.E, add(adjoint(a), a)));
    return h;
}

Operator non_hermitian_hamiltonian(const HilbertSpace& space, const SystemParams& p) {
    Operator h = hamiltonian(space, p);
    h = add(h, scale(Complex(0.0, -0.5 * p.kappa_a), number_operator(space, Mode::a)));
    h = add(h, scale(Complex(0.0, -0.5 * p.kappa_b), number_operator(space, Mode::b)));
    h = add(h, scale(Complex(0.0, -0.5 * p.kappa_c), number_operator(space, Mode::c)));
    return h;
}

} // namespace nopo
