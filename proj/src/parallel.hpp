#pragma once

#include <exception>
#include <mutex>

namespace hdwn::detail {

// Exceptions must not escape an OpenMP region. Loop bodies run through
// capture(); the first exception is rethrown after the region.
class ExceptionTrap {
 public:
  template <class F>
  void capture(F&& body) noexcept {
    try {
      body();
    } catch (...) {
      std::lock_guard<std::mutex> lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }

  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

}  // namespace hdwn::detail
