#include "xsb/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

namespace xsb {

namespace {

// The FFTW planner keeps global state; execution of distinct plans is thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Plan {
 public:
  Plan(std::span<cplx> data, std::span<const std::size_t> size, int sign) {
    std::vector<int> dims(size.begin(), size.end());
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), ptr, ptr, sign, FFTW_ESTIMATE);
  }
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;

  void execute() const { fftw_execute(plan_); }
  explicit operator bool() const { return plan_ != nullptr; }

 private:
  fftw_plan plan_ = nullptr;
};

// Multiplies sample k by (-1)^{k_1 + ... + k_D}.
void checkerboard(std::span<cplx> data, std::span<const std::size_t> size) {
  const std::size_t inner = size.back();
  const std::size_t rows = data.size() / inner;
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t rem = r;
    std::size_t parity = 0;
    for (std::size_t ax = size.size() - 1; ax-- > 0;) {
      parity += rem % size[ax];
      rem /= size[ax];
    }
    cplx* row = data.data() + r * inner;
    for (std::size_t j = (parity & 1U); j < inner; j += 2) row[j] = -row[j];
  }
}

}  // namespace

template <std::size_t D>
Grid<D>::Grid(std::array<double, D> extent, std::array<std::size_t, D> size) : extent_(extent), size_(size) {
  for (std::size_t i = 0; i < D; ++i) {
    if (size_[i] < 8 || size_[i] % 2 != 0) {
      throw InvalidGrid("grid size must be even and >= 8, got " + std::to_string(size_[i]) + " on axis " +
                        std::to_string(i));
    }
    if (!(extent_[i] > 0.0) || !std::isfinite(extent_[i])) {
      throw InvalidGrid("grid extent must be positive and finite on axis " + std::to_string(i));
    }
  }
}

template <std::size_t D>
std::size_t Grid<D>::count() const {
  std::size_t c = 1;
  for (auto n : size_) c *= n;
  return c;
}

template <std::size_t D>
double Grid<D>::cell_volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < D; ++i) v *= spacing(i);
  return v;
}

template <std::size_t D>
Grid<D> Grid<D>::dual() const {
  std::array<double, D> ext{};
  for (std::size_t i = 0; i < D; ++i) ext[i] = std::numbers::pi / spacing(i);
  return Grid<D>(ext, size_);
}

template <std::size_t D>
void Field<D>::validate() const {
  if (values.size() != grid.count()) {
    throw InvalidGrid("field has " + std::to_string(values.size()) + " samples, grid expects " +
                      std::to_string(grid.count()));
  }
  for (const auto& z : values) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw NumericalDomain("non-finite field sample");
  }
}

void transform_inplace(std::span<cplx> data, std::span<const std::size_t> size, Direction direction,
                       double scale) {
  std::size_t count = 1;
  std::size_t half_sum = 0;
  for (auto n : size) {
    count *= n;
    half_sum += n / 2;
  }
  if (count != data.size()) throw InvalidGrid("transform: sample count does not match sizes");

  checkerboard(data, size);
  {
    Plan plan(data, size, direction == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD);
    if (!plan) throw Error("FFTW failed to create a plan");
    plan.execute();
  }
  checkerboard(data, size);
  const double s = (half_sum % 2 == 0) ? scale : -scale;
  for (auto& z : data) z *= s;
}

template <std::size_t D>
Field<D> transform(const Field<D>& field, Direction direction) {
  if (field.values.size() != field.grid.count()) {
    throw InvalidGrid("transform: field has " + std::to_string(field.values.size()) + " samples, grid expects " +
                      std::to_string(field.grid.count()));
  }
  double scale = 1.0;
  for (std::size_t i = 0; i < D; ++i) scale *= field.grid.spacing(i) / std::sqrt(2.0 * std::numbers::pi);
  Field<D> out(field.grid.dual(), field.values);
  transform_inplace(out.values, field.grid.size(), direction, scale);
  return out;
}

template <std::size_t D>
double l2_norm(const Field<D>& field) {
  double acc = 0.0;
  for (const auto& z : field.values) acc += std::norm(z);
  return std::sqrt(acc * field.grid.cell_volume());
}

template <std::size_t D>
double lp_norm(const Field<D>& field, double p) {
  double acc = 0.0;
  for (const auto& z : field.values) acc += std::pow(std::abs(z), p);
  return std::pow(acc * field.grid.cell_volume(), 1.0 / p);
}

template <std::size_t D>
Field<D> reflect(const Field<D>& field) {
  Field<D> out(field.grid);
  const auto& n = field.grid.size();
  std::array<std::size_t, D> k{};
  for (std::size_t idx = 0; idx < field.values.size(); ++idx) {
    std::size_t rem = idx;
    for (std::size_t ax = D; ax-- > 0;) {
      k[ax] = rem % n[ax];
      rem /= n[ax];
    }
    std::array<std::size_t, D> m{};
    for (std::size_t ax = 0; ax < D; ++ax) m[ax] = (n[ax] - k[ax]) % n[ax];
    out.values[idx] = field[m];
  }
  return out;
}

template <std::size_t D>
bool touches_boundary(const Field<D>& field, double threshold) {
  const auto& n = field.grid.size();
  std::array<std::size_t, D> k{};
  for (std::size_t idx = 0; idx < field.values.size(); ++idx) {
    std::size_t rem = idx;
    bool face = false;
    for (std::size_t ax = D; ax-- > 0;) {
      k[ax] = rem % n[ax];
      rem /= n[ax];
      face = face || k[ax] == 0 || k[ax] + 1 == n[ax];
    }
    if (face && std::abs(field.values[idx]) > threshold) return true;
  }
  return false;
}

template <std::size_t D>
Field<D> zero_pad(const Field<D>& field) {
  std::array<double, D> ext{};
  std::array<std::size_t, D> size{};
  for (std::size_t i = 0; i < D; ++i) {
    ext[i] = 2.0 * field.grid.extent(i);
    size[i] = 2 * field.grid.size(i);
  }
  Field<D> out(Grid<D>(ext, size));
  const auto& n = field.grid.size();
  std::array<std::size_t, D> k{};
  for (std::size_t idx = 0; idx < field.values.size(); ++idx) {
    std::size_t rem = idx;
    for (std::size_t ax = D; ax-- > 0;) {
      k[ax] = rem % n[ax] + n[ax] / 2;
      rem /= n[ax];
    }
    out[k] = field.values[idx];
  }
  return out;
}

#define XSB_INSTANTIATE(D)                                                     \
  template class Grid<D>;                                                      \
  template struct Field<D>;                                                    \
  template Field<D> transform<D>(const Field<D>&, Direction);                  \
  template double l2_norm<D>(const Field<D>&);                                 \
  template double lp_norm<D>(const Field<D>&, double);                         \
  template Field<D> reflect<D>(const Field<D>&);                               \
  template bool touches_boundary<D>(const Field<D>&, double);                  \
  template Field<D> zero_pad<D>(const Field<D>&);

XSB_INSTANTIATE(1)
XSB_INSTANTIATE(2)
XSB_INSTANTIATE(3)

#undef XSB_INSTANTIATE

}  // namespace xsb
