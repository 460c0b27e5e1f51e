"""Smoke tests for the Python bindings (run by ctest)."""

import math
import unittest

import kpzlab


class Smoke(unittest.TestCase):
    def test_params(self):
        m = kpzlab.ModelParams.from_tau(0.5)
        self.assertAlmostEqual(m.gamma, 1 / 3, places=14)

    def test_initial_data(self):
        self.assertAlmostEqual(kpzlab.f_n_initial([2.0, 1.0], 0.5), math.exp(-1.25), places=14)

    def test_contour_small_t(self):
        x = [0.6, -0.4]
        ref = kpzlab.f_n_initial(x, 0.5)
        self.assertLess(abs(kpzlab.f_n_contour(x, 1e-6, 0.5) - ref) / ref, 1e-6)

    def test_tracy_widom(self):
        self.assertAlmostEqual(kpzlab.tw_gue_cdf(0.0), 0.969372828355, places=9)
        self.assertAlmostEqual(abs(kpzlab.det_Kr(2.0, -1.0)), kpzlab.tw_gue_cdf(-1.0), places=6)

    def test_simulate(self):
        out = kpzlab.simulate([0.0, 0.2], t=0.1, tau=0.5, dt=1e-2, n_paths=5, seed=1)
        self.assertEqual(len(out), 5)
        self.assertTrue(all(a <= b for a, b in out))
        again = kpzlab.simulate([0.0, 0.2], t=0.1, tau=0.5, dt=1e-2, n_paths=5, seed=1)
        self.assertEqual(out, again)

    def test_errors(self):
        with self.assertRaises(kpzlab.KpzError):
            kpzlab.simulate([0.0, 0.2], t=0.1, tau=0.5, dt=1e-2, scheme="nope")

    def test_lln(self):
        self.assertAlmostEqual(kpzlab.lln_counts(1.0, 100.0), 25.0)
        zc, g3 = kpzlab.saddle_point(1.0)
        self.assertAlmostEqual(zc, -0.5)
        self.assertAlmostEqual(g3, 4.0)


if __name__ == "__main__":
    unittest.main()
