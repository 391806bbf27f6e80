#include <pybind11/pybind11.h>
PYBIND11_MODULE(_lwt, m) { m.doc() = "placeholder"; }
