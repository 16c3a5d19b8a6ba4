#pragma once

namespace dsimb {

/// Threads used by the OpenMP kernels. Defaults to DSIMB_THREADS when set,
/// otherwise the OpenMP default (which honours OMP_NUM_THREADS).
int thread_count();
void set_thread_count(int n);

/// Sets the thread count for the lifetime of the object.
class ScopedThreads {
 public:
  explicit ScopedThreads(int n) : saved_(thread_count()) { set_thread_count(n); }
  ~ScopedThreads() { set_thread_count(saved_); }
  ScopedThreads(const ScopedThreads&) = delete;
  ScopedThreads& operator=(const ScopedThreads&) = delete;

 private:
  int saved_;
};

}  // namespace dsimb
