#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace gaa {

enum class Boundary { Open, Periodic };

// Golden-ratio wavenumber (sqrt(5)-1)/2, the default incommensurate modulation.
inline constexpr double kGoldenWavenumber = 0.61803398874989484820458683436564;

// Chain parameters. Sites are numbered 1..L; the on-site modulation uses that
// index directly. t is the energy unit.
struct ModelParams {
    int L = 12;                            // site count
    int N = 6;                             // particle count
    double t = 1.0;                        // hopping amplitude
    double lambda = 1.0;                   // quasi-periodic strength
    double alpha = 0.0;                    // flattening parameter, 0 <= alpha < 1
    double V = 1.0;                        // nearest-neighbor interaction
    double q = kGoldenWavenumber;          // quasi-periodic wavenumber
    double phi = 0.0;                      // phase offset in [0, 2*pi)
    Boundary boundary = Boundary::Open;
};

// Half filling for even L, nearly half filling for odd L.
constexpr int half_filling(int L) { return (L % 2 == 0) ? L / 2 : (L + 1) / 2; }

// Throws std::invalid_argument when a parameter is out of its domain.
void validate(const ModelParams& p);

// Exact binomial coefficient; 0 when k < 0 or k > n. Overflow-safe for n <= 62.
unsigned long long binomial(int n, int k);

// On-site modulation 2*cos(2*pi*q*site + phi) / (1 - alpha*cos(2*pi*q*site + phi)).
// `site` is 1-based. Requires 0 <= alpha < 1 so the denominator stays positive;
// the value is bounded by 2/(1 - alpha).
double onsite_coefficient(int site, double alpha, double q, double phi);

// Occupation basis of the fixed-N sector. Bit i of a state corresponds to
// site i+1; states are strictly increasing as unsigned integers.
struct FockBasis {
    int L = 0;
    int N = 0;
    std::vector<std::uint32_t> states;

    Eigen::Index size() const { return static_cast<Eigen::Index>(states.size()); }

    // Position of `state` in `states`, or -1 when absent.
    Eigen::Index index_of(std::uint32_t state) const;
};

// All C(L, N) occupation patterns in increasing order. Requires 0 <= N <= L <= 30.
FockBasis enumerate_basis(int L, int N);

// Count of occupied nearest-neighbor pairs in `state`, including the wrap
// bond for periodic chains.
int adjacent_pair_count(std::uint32_t state, int L, Boundary boundary);

// Dense real-symmetric Hamiltonian in the occupation basis: hopping -t across
// each bond, on-site lambda*C_i, interaction V per occupied bond. Both
// triangles are filled at assembly. Under periodic boundary the wrap hop
// carries the Jordan-Wigner sign (-1)^(particles strictly between the end
// sites); all interior hops have sign +1.
Eigen::MatrixXd build_hamiltonian(const ModelParams& p, const FockBasis& basis);

enum class PerturbationKind { LocalDensity, ExtensiveNN };

// Diagonal of a gauge-deformation operator in the occupation basis.
// LocalDensity: occupation of the central site (L/2 for even L, (L+1)/2 for
// odd L, 1-based). ExtensiveNN: occupied nearest-neighbor pair count.
Eigen::VectorXd build_perturbation(PerturbationKind kind, const ModelParams& p,
                                   const FockBasis& basis);

}  // namespace gaa
