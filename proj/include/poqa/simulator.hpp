#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace poqa {

enum class GateKind { Rx, Ry, Rz, H, Cx, Cz, Rzz };

struct Gate {
  GateKind kind = GateKind::H;
  int q0 = 0;
  int q1 = -1;         // second qubit for cx/cz/rzz; cx control is q0
  double angle = 0.0;  // rotation kinds only
};

Gate rx(int q, double theta);
Gate ry(int q, double theta);
Gate rz(int q, double theta);
Gate h(int q);
Gate cx(int control, int target);
Gate cz(int a, int b);
Gate rzz(int a, int b, double theta);

inline constexpr int kSimulatorMaxQubits = 24;

// Dense statevector over n qubits, little-endian basis indexing.
// Rotation conventions: rx(t)=exp(-i t X/2), ry(t)=exp(-i t Y/2),
// rz(t)=exp(-i t Z/2), rzz(t)=exp(-i t Z(x)Z/2).
class Statevector {
 public:
  explicit Statevector(int n);  // |0...0>

  int num_qubits() const { return n_; }
  std::span<const std::complex<double>> amplitudes() const { return amp_; }

  void apply(const Gate& gate);
  void apply(std::span<const Gate> gates);

  double norm() const;

  // sum_k |amp_k|^2 * table[k]; exact, no shot noise.
  double expectation_diagonal(std::span<const double> table) const;

  // argmax_k |amp_k|^2 as a displayed bitstring; ties break to the lowest
  // basis index.
  std::string most_probable_bits() const;

  // Optional shot-sampling mode: `shots` basis-state indices drawn from
  // |amp|^2 with a seeded generator.
  std::vector<std::uint64_t> sample(int shots, std::uint64_t seed) const;

 private:
  void check_gate(const Gate& gate) const;

  int n_;
  std::vector<std::complex<double>> amp_;
};

}  // namespace poqa
