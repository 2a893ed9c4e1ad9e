#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mvi/grid_function.hpp"
#include "mvi/time_grid.hpp"

namespace mvi::identities {

// Shared knobs for the randomized verification suites. Every suite draws all
// of its randomness from seed, so a report is reproducible from the printed
// seed alone.
struct SuiteConfig {
    std::uint64_t seed = 123456789;
    int instances = 100;
    std::vector<int> dims = {1, 2, 3};
    int n_min = 2;
    int n_max = 32;
};

struct CheckResult {
    std::string name;
    int instances = 0;
    double max_residual = 0;  // relative to the largest intermediate term
    double tolerance = 0;
    bool pass = false;
    std::string note;
};

using Rng = std::mt19937_64;

TimeGrid random_grid(Rng& rng, int n);
GridFunction random_function(Rng& rng, const NodeSet& set, int dim);

// Quadrature of a forward difference telescopes to the endpoint gap, and the
// forward difference of the running quadrature returns the integrand.
CheckResult fundamental_theorem(const SuiteConfig& cfg);

// The forward difference of the doubled-grid extension, read at the half
// nodes, equals the forward difference on the base grid.
CheckResult extension_derivative(const SuiteConfig& cfg);

// Summation by parts between the half-node quadrature and the node quadrature,
// with its two boundary terms.
CheckResult integration_by_parts(const SuiteConfig& cfg);

// Pairing a half-node function against an extended direction equals pairing
// its backward mean against the direction itself, for directions vanishing at
// the endpoints.
CheckResult half_node_pairing(const SuiteConfig& cfg);

// The same pairing with free endpoint values: measures which boundary
// coefficient (h/2 against h) closes the identity and reports both residuals.
CheckResult pairing_boundary_coefficient(const SuiteConfig& cfg);

// Canonical interior variations read off h g(t_i) exactly, so a function
// orthogonal to all of them vanishes at the interior nodes, and endpoint
// values are invisible to the pairing.
CheckResult dubois_raymond(const SuiteConfig& cfg);

// frechet_midpoint against a central finite difference of action_midpoint,
// per built-in problem.
CheckResult frechet_consistency(const SuiteConfig& cfg);

// The summed two-point step Lagrangian reproduces action_midpoint.
CheckResult wm_action_equality(const SuiteConfig& cfg);

// The two-point stationarity residual is -h times the mid-point scheme
// residual.
CheckResult wm_residual_scaling(const SuiteConfig& cfg);

// For L = |v|^2/2 - V(q) the scheme residual equals the second difference of
// q over h^2 plus the averaged potential gradient at the two midpoints.
CheckResult mechanical_form_equality(const SuiteConfig& cfg);

// The position scheme seeded from one phase-space step reproduces the
// phase-space trajectory, momenta included.
CheckResult scheme_equivalence(const SuiteConfig& cfg);

// Averaged momenta match dL/dv at the star points along critical
// trajectories of both integrators.
CheckResult momentum_constraint(const SuiteConfig& cfg);

// The three momentum formulas (left half step, right half step, two-point
// partials) agree along critical trajectories; the identically-equal pairs
// agree on any trajectory.
CheckResult momentum_coherence(const SuiteConfig& cfg);

// build_hamiltonian gradients against finite differences of its value, and
// the Legendre round trip dL/dv(q, g(p, q)) = p.
CheckResult hamiltonian_gradients(const SuiteConfig& cfg);

// Reversing a critical sequence of the mid-point scheme yields another
// critical sequence (mechanical models).
CheckResult time_reversal(const SuiteConfig& cfg);

// The phase-space scheme preserves the harmonic energy to solver precision.
CheckResult quadratic_invariant(const SuiteConfig& cfg);

// criticality_check accepts integrator output and rejects perturbed output.
CheckResult criticality(const SuiteConfig& cfg);

// Finite-difference derivative of the phase-space action in the final
// momentum equals (h/2) times the last position-equation residual.
CheckResult boundary_variation(const SuiteConfig& cfg);

std::vector<CheckResult> run_all(const SuiteConfig& cfg);

} // namespace mvi::identities
