#include "pauli/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace pauli::fft {
namespace {

// FFTW_ESTIMATE keeps plan selection (and therefore rounding) deterministic
// from run to run. Transforms always run on aligned scratch buffers so the
// SIMD codelets chosen at planning time stay valid.
constexpr unsigned kFlags = FFTW_ESTIMATE;

struct Buffers {
  fftw_complex* a = nullptr;
  fftw_complex* b = nullptr;
  double* r = nullptr;

  explicit Buffers(std::size_t total)
      : a(fftw_alloc_complex(total)), b(fftw_alloc_complex(total)), r(fftw_alloc_real(total)) {
    if (!a || !b || !r) throw std::bad_alloc();
  }
  Buffers(const Buffers&) = delete;
  Buffers& operator=(const Buffers&) = delete;
  ~Buffers() {
    fftw_free(a);
    fftw_free(b);
    fftw_free(r);
  }
};

struct Plans {
  fftw_plan c2c_forward = nullptr;
  fftw_plan c2c_backward = nullptr;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  explicit Plans(int n) {
    Buffers buf(static_cast<std::size_t>(n) * n * n);
    c2c_forward = fftw_plan_dft_3d(n, n, n, buf.a, buf.b, FFTW_FORWARD, kFlags);
    c2c_backward = fftw_plan_dft_3d(n, n, n, buf.a, buf.b, FFTW_BACKWARD, kFlags);
    r2c = fftw_plan_dft_r2c_3d(n, n, n, buf.r, buf.b, kFlags);
    c2r = fftw_plan_dft_c2r_3d(n, n, n, buf.b, buf.r, kFlags);
    if (!c2c_forward || !c2c_backward || !r2c || !c2r) throw std::runtime_error("fft: FFTW planning failed");
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
  ~Plans() {
    fftw_destroy_plan(c2c_forward);
    fftw_destroy_plan(c2c_backward);
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
  }
};

// The FFTW planner is not thread-safe; execution on fresh arrays is.
const Plans& plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Plans>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Plans>(n);
  return *slot;
}

// Per-thread scratch, sized for the largest grid seen so far.
Buffers& scratch(const Grid& g) {
  thread_local std::unique_ptr<Buffers> buf;
  thread_local std::size_t capacity = 0;
  if (capacity < g.size()) {
    buf = std::make_unique<Buffers>(g.size());
    capacity = g.size();
  }
  return *buf;
}

void check(std::size_t got, std::size_t want) {
  if (got != want) throw std::invalid_argument("fft: buffer size does not match grid");
}

}  // namespace

std::size_t half_size(const Grid& g) { return static_cast<std::size_t>(g.n) * g.n * (g.n / 2 + 1); }

namespace {

bool aligned(const void* p) { return fftw_alignment_of(static_cast<double*>(const_cast<void*>(p))) == 0; }

fftw_complex* as_fftw(const cplx* p) { return reinterpret_cast<fftw_complex*>(const_cast<cplx*>(p)); }

// Out-of-place c2c transform; unaligned arguments are staged through scratch.
void execute_c2c(const Grid& g, fftw_plan plan, std::span<const cplx> in, std::span<cplx> out) {
  check(in.size(), g.size());
  check(out.size(), g.size());
  if (aligned(in.data()) && aligned(out.data()) && in.data() != out.data()) {
    fftw_execute_dft(plan, as_fftw(in.data()), as_fftw(out.data()));
    return;
  }
  Buffers& buf = scratch(g);
  std::memcpy(static_cast<void*>(buf.a), in.data(), in.size_bytes());
  fftw_execute_dft(plan, buf.a, buf.b);
  std::memcpy(static_cast<void*>(out.data()), buf.b, out.size_bytes());
}

}  // namespace

void forward(const Grid& g, std::span<const cplx> in, std::span<cplx> out) {
  execute_c2c(g, plans_for(g.n).c2c_forward, in, out);
}

void inverse(const Grid& g, std::span<const cplx> in, std::span<cplx> out) {
  execute_c2c(g, plans_for(g.n).c2c_backward, in, out);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& z : out) z *= scale;
}

ComplexArray forward(const Grid& g, std::span<const cplx> in) {
  ComplexArray out(g.size());
  forward(g, in, out);
  return out;
}

ComplexArray inverse(const Grid& g, std::span<const cplx> in) {
  ComplexArray out(g.size());
  inverse(g, in, out);
  return out;
}

ComplexArray forward_real(const Grid& g, std::span<const double> in) {
  check(in.size(), g.size());
  const Plans& plans = plans_for(g.n);
  ComplexArray out(half_size(g));
  if (aligned(in.data())) {
    fftw_execute_dft_r2c(plans.r2c, const_cast<double*>(in.data()), as_fftw(out.data()));
    return out;
  }
  Buffers& buf = scratch(g);
  std::memcpy(buf.r, in.data(), in.size_bytes());
  fftw_execute_dft_r2c(plans.r2c, buf.r, as_fftw(out.data()));
  return out;
}

RealArray inverse_real(const Grid& g, std::span<const cplx> in) {
  check(in.size(), half_size(g));
  const Plans& plans = plans_for(g.n);
  Buffers& buf = scratch(g);
  std::memcpy(static_cast<void*>(buf.b), in.data(), in.size_bytes());  // c2r overwrites its input
  RealArray out(g.size());
  fftw_execute_dft_c2r(plans.c2r, buf.b, out.data());
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& x : out) x *= scale;
  return out;
}

}  // namespace pauli::fft
