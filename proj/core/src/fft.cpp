#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace shiftreal::fft {
namespace {

// Planning is not thread safe in FFTW; execution with fftw_execute_dft is.
class PlanCache {
public:
    ~PlanCache()
    {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(int n, int sign)
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        Eigen::VectorXcd a(n), b(n);
        fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                       reinterpret_cast<fftw_complex*>(b.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache()
{
    static PlanCache c;
    return c;
}

Eigen::VectorXcd run(const Eigen::VectorXcd& in, int sign)
{
    const int n = static_cast<int>(in.size());
    Eigen::VectorXcd src = in;
    Eigen::VectorXcd out(n);
    fftw_execute_dft(cache().get(n, sign), reinterpret_cast<fftw_complex*>(src.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

}  // namespace

Eigen::VectorXcd forward(const Eigen::VectorXcd& in) { return run(in, FFTW_FORWARD); }
Eigen::VectorXcd backward(const Eigen::VectorXcd& in) { return run(in, FFTW_BACKWARD); }

}  // namespace shiftreal::fft
