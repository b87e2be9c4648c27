#include "edlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "edlab/error.hpp"

namespace edlab::fft {
namespace {

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using PlanPtr = std::unique_ptr<fftw_plan_s, PlanDeleter>;

using PlanKey = std::tuple<std::vector<std::size_t>, int, int>;

class PlanCache {
 public:
  fftw_plan get(const Grid& g, int axis, Direction dir) {
    std::vector<std::size_t> shape;
    for (const auto& ax : g.axes()) shape.push_back(ax.n);
    PlanKey key{shape, axis, static_cast<int>(dir)};

    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second.get();

    const auto ua = static_cast<std::size_t>(axis);
    const auto n = static_cast<int>(shape[ua]);
    const auto stride = static_cast<int>(g.stride(axis));
    std::size_t outer = 1;
    for (std::size_t b = 0; b < ua; ++b) outer *= shape[b];

    fftw_iodim dims[1] = {{n, stride, stride}};
    fftw_iodim loops[2] = {{static_cast<int>(outer), n * stride, n * stride}, {stride, 1, 1}};

    std::vector<cplx> scratch(g.size());
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan p = fftw_plan_guru_dft(1, dims, 2, loops, buf, buf, static_cast<int>(dir),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    require(p != nullptr, "fft: planner failed");
    auto [it, inserted] = plans_.emplace(std::move(key), PlanPtr(p));
    return it->second.get();
  }

 private:
  std::mutex mutex_;
  std::map<PlanKey, PlanPtr> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void transform_axis(const Grid& g, int axis, std::span<cplx> data, Direction dir) {
  require(axis >= 0 && axis < g.dim(), "fft: axis out of range");
  require(data.size() == g.size(), "fft: buffer does not match grid");
  fftw_plan p = cache().get(g, axis, dir);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, buf, buf);
}

void transform_all(const Grid& g, std::span<cplx> data, Direction dir) {
  for (int a = 0; a < g.dim(); ++a) transform_axis(g, a, data, dir);
}

}  // namespace edlab::fft
