#include "snse/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace snse {
namespace {

// FFTW planning is not thread-safe; execution with per-call buffers is.
std::mutex plan_mutex;

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

fftw_plan get_plan(const Grid& g, int sign) {
  static std::map<std::pair<int, int>, PlanPair> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(g.dim, g.points);
  auto& entry = cache[key];
  fftw_plan& slot = sign == FFTW_FORWARD ? entry.forward : entry.backward;
  if (!slot) {
    std::vector<fftw_complex> buf(g.total());
    int dims[3] = {g.points, g.points, g.points};
    slot = fftw_plan_dft(g.dim, dims, buf.data(), buf.data(), sign, FFTW_ESTIMATE);
  }
  return slot;
}

void execute(const Grid& g, int sign, std::vector<Complex>& inout) {
  fftw_plan plan = get_plan(g, sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(inout.data()),
                   reinterpret_cast<fftw_complex*>(inout.data()));
}

}  // namespace

PhysicalField inverse_transform(const SpectralField& F) {
  PhysicalField out(F.grid, F.comps);
  std::vector<Complex> buf;
  for (int c = 0; c < F.comps; ++c) {
    buf = F.data[c];
    execute(F.grid, FFTW_BACKWARD, buf);
    auto& dst = out.data[c];
    for (std::size_t i = 0; i < buf.size(); ++i) dst[i] = buf[i].real();
  }
  return out;
}

SpectralField forward_transform(const PhysicalField& f) {
  SpectralField out(f.grid, f.comps);
  const double scale = 1.0 / static_cast<double>(f.grid.total());
  std::vector<Complex> buf(f.grid.total());
  for (int c = 0; c < f.comps; ++c) {
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = f.data[c][i];
    execute(f.grid, FFTW_FORWARD, buf);
    auto& dst = out.data[c];
    for (std::size_t i = 0; i < buf.size(); ++i) dst[i] = buf[i] * scale;
  }
  return out;
}

}  // namespace snse
