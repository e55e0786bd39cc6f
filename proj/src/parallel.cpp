#include "braidforce/parallel.hpp"

#include <cstdlib>
#include <string>

namespace braidforce {

namespace {
std::atomic<int> cap{0};
}

int thread_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BRAIDFORCE_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) n = v;
    } catch (...) {
    }
  }
  if (cap > 0 && (n <= 0 || n > cap)) n = cap;
  return n > 0 ? n : 1;
}

void set_thread_cap(int n) { cap = n; }

} // namespace braidforce
