"""Desk-scale workbench for divisor sums of meromorphic modular forms.

Subpackages cover exact q-expansion arithmetic, Gamma_0(N) cusp data and the
valence formula, binary quadratic forms and CM points, real-analytic
Eisenstein series with twisted CM traces, CM-product lifts with Hecke
equivariance, the explicit level-11 divisor-sum identity, and regularized
inner products by quadrature.
"""

__version__ = "0.1.0"
