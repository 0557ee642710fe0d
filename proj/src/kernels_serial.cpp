#include "kernel_impl.hpp"

namespace sscnet::kernels {

namespace {

struct SerialLoop {
  template <class Body>
  void operator()(Index n, Body&& body) const {
    for (Index j = 0; j < n; ++j) body(j);
  }
};

}  // namespace

namespace serial {
SSCNET_DEFINE_KERNELS(SerialLoop)
}  // namespace serial

}  // namespace sscnet::kernels
