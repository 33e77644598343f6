#include "poqa/simulator.hpp"

#include <cmath>
#include <stdexcept>

#include "poqa/encoding.hpp"
#include "poqa/rng.hpp"

namespace poqa {
namespace {

using cplx = std::complex<double>;

bool is_rotation(GateKind kind) {
  return kind == GateKind::Rx || kind == GateKind::Ry ||
         kind == GateKind::Rz || kind == GateKind::Rzz;
}

bool is_two_qubit(GateKind kind) {
  return kind == GateKind::Cx || kind == GateKind::Cz ||
         kind == GateKind::Rzz;
}

}  // namespace

Gate rx(int q, double theta) { return {GateKind::Rx, q, -1, theta}; }
Gate ry(int q, double theta) { return {GateKind::Ry, q, -1, theta}; }
Gate rz(int q, double theta) { return {GateKind::Rz, q, -1, theta}; }
Gate h(int q) { return {GateKind::H, q, -1, 0.0}; }
Gate cx(int control, int target) { return {GateKind::Cx, control, target, 0.0}; }
Gate cz(int a, int b) { return {GateKind::Cz, a, b, 0.0}; }
Gate rzz(int a, int b, double theta) { return {GateKind::Rzz, a, b, theta}; }

Statevector::Statevector(int n) : n_(n) {
  if (n < 1 || n > kSimulatorMaxQubits) {
    throw std::invalid_argument("qubit count out of range [1, 24]");
  }
  amp_.assign(1ULL << n, cplx(0.0, 0.0));
  amp_[0] = cplx(1.0, 0.0);
}

void Statevector::check_gate(const Gate& gate) const {
  if (gate.q0 < 0 || gate.q0 >= n_) {
    throw std::invalid_argument("gate qubit index out of range");
  }
  if (is_two_qubit(gate.kind)) {
    if (gate.q1 < 0 || gate.q1 >= n_ || gate.q1 == gate.q0) {
      throw std::invalid_argument("gate qubit indices must be distinct");
    }
  }
}

void Statevector::apply(const Gate& gate) {
  check_gate(gate);
  const std::uint64_t size = amp_.size();
  const std::uint64_t bit0 = 1ULL << gate.q0;

  switch (gate.kind) {
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::H: {
      // generic 2x2 update on pairs (k, k | bit0)
      cplx m00, m01, m10, m11;
      if (gate.kind == GateKind::H) {
        const double r = 1.0 / std::sqrt(2.0);
        m00 = m01 = m10 = r;
        m11 = -r;
      } else {
        const double c = std::cos(gate.angle / 2.0);
        const double s = std::sin(gate.angle / 2.0);
        if (gate.kind == GateKind::Rx) {
          m00 = m11 = c;
          m01 = m10 = cplx(0.0, -s);
        } else {
          m00 = m11 = c;
          m01 = -s;
          m10 = s;
        }
      }
      for (std::uint64_t k = 0; k < size; ++k) {
        if (k & bit0) continue;
        const cplx a0 = amp_[k];
        const cplx a1 = amp_[k | bit0];
        amp_[k] = m00 * a0 + m01 * a1;
        amp_[k | bit0] = m10 * a0 + m11 * a1;
      }
      break;
    }
    case GateKind::Rz: {
      const cplx p0 = std::polar(1.0, -gate.angle / 2.0);
      const cplx p1 = std::polar(1.0, gate.angle / 2.0);
      for (std::uint64_t k = 0; k < size; ++k) {
        amp_[k] *= (k & bit0) ? p1 : p0;
      }
      break;
    }
    case GateKind::Cx: {
      const std::uint64_t bit1 = 1ULL << gate.q1;
      for (std::uint64_t k = 0; k < size; ++k) {
        if ((k & bit0) && !(k & bit1)) {
          std::swap(amp_[k], amp_[k | bit1]);
        }
      }
      break;
    }
    case GateKind::Cz: {
      const std::uint64_t bit1 = 1ULL << gate.q1;
      for (std::uint64_t k = 0; k < size; ++k) {
        if ((k & bit0) && (k & bit1)) amp_[k] = -amp_[k];
      }
      break;
    }
    case GateKind::Rzz: {
      const std::uint64_t bit1 = 1ULL << gate.q1;
      const cplx same = std::polar(1.0, -gate.angle / 2.0);
      const cplx diff = std::polar(1.0, gate.angle / 2.0);
      for (std::uint64_t k = 0; k < size; ++k) {
        const bool b0 = k & bit0;
        const bool b1 = k & bit1;
        amp_[k] *= (b0 == b1) ? same : diff;
      }
      break;
    }
  }
}

void Statevector::apply(std::span<const Gate> gates) {
  for (const Gate& g : gates) apply(g);
}

double Statevector::norm() const {
  double total = 0.0;
  for (const cplx& a : amp_) total += std::norm(a);
  return std::sqrt(total);
}

double Statevector::expectation_diagonal(std::span<const double> table) const {
  if (table.size() != amp_.size()) {
    throw std::invalid_argument("energy table length mismatch");
  }
  double value = 0.0;
  for (std::uint64_t k = 0; k < amp_.size(); ++k) {
    value += std::norm(amp_[k]) * table[k];
  }
  return value;
}

std::string Statevector::most_probable_bits() const {
  std::uint64_t best = 0;
  double best_p = std::norm(amp_[0]);
  for (std::uint64_t k = 1; k < amp_.size(); ++k) {
    const double p = std::norm(amp_[k]);
    if (p > best_p) {
      best_p = p;
      best = k;
    }
  }
  return index_to_bits(best, n_);
}

std::vector<std::uint64_t> Statevector::sample(int shots,
                                               std::uint64_t seed) const {
  if (shots < 0) throw std::invalid_argument("shots must be >= 0");
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(shots));
  Rng rng(seed);
  for (int s = 0; s < shots; ++s) {
    double u = rng.uniform01();
    std::uint64_t k = 0;
    for (; k + 1 < amp_.size(); ++k) {
      u -= std::norm(amp_[k]);
      if (u <= 0.0) break;
    }
    out.push_back(k);
  }
  return out;
}

}  // namespace poqa
