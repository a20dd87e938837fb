#pragma once

#include <stdexcept>
#include <string>

namespace toda {

// Invalid input: wrong lattice size, bad variable, mismatched operands.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A denominator or determinant vanished (symbolically or at an evaluation point).
class SingularError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Gradient field with nonzero curl: no Hamiltonian exists.
class NotHamiltonianError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Recovered Hamiltonian still depends on t.
class GaugeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive step size collapsed below the allowed floor.
class StiffnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A self-check of the symbolic kernel failed; indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace toda
