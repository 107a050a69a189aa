#include <pybind11/pybind11.h>
PYBIND11_MODULE(_pnlab, m) { m.doc() = "placeholder"; }
