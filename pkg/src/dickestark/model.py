"""Model parameters, truncated basis, and sparse Hamiltonian assembly.

The Hamiltonian of N two-level atoms collectively coupled to one cavity
mode, with independently tunable rotating / counter-rotating couplings,
a nonlinear Stark term, and an A-square term:

    H = omega a+a + delta Jz + (g/sqrt(N)) (a+ J- + a J+)
        + (g tau/sqrt(N)) (a+ J+ + a J-)
        + (u/N) a+a Jz + d (a+ + a)^2,          d = kappa g^2 / delta

Basis states are |n, k> with photon number n in [0, n_max] and spin
ladder index k = m + N/2 in [0, N] on the maximal-spin (j = N/2)
manifold.  Every term conserves the parity (-1)^(n+k), so the matrix is
block diagonal over the two parity sectors.
"""

from __future__ import annotations

import dataclasses
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import (
    ContinuumRegimeWarning,
    DimensionMismatch,
    DimensionOverflow,
    SectorMismatch,
)

EVEN = "even"
ODD = "odd"
FULL = "full"
SECTORS = (EVEN, ODD, FULL)

#: default guard against runaway basis sizes
DIM_CAP = 4_000_000


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters, energies in units of the cavity frequency.

    omega   cavity frequency (> 0, sets the scale)
    delta   atomic transition frequency (> 0)
    g       rotating-wave coupling strength
    tau     counter-rotating to rotating coupling ratio (dimensionless)
    u       Stark coupling
    kappa   A-square coefficient (>= 0); kappa >= 1 respects the
            oscillator-strength sum rule but is not enforced
    n_atoms atom count (>= 1)
    """

    omega: float = 1.0
    delta: float = 1.0
    g: float = 0.0
    tau: float = 1.0
    u: float = 0.0
    kappa: float = 0.0
    n_atoms: int = 1

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.delta <= 0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if self.kappa < 0:
            raise ValueError(f"kappa must be non-negative, got {self.kappa}")
        if self.n_atoms < 1 or int(self.n_atoms) != self.n_atoms:
            raise ValueError(f"n_atoms must be a positive integer, got {self.n_atoms}")
        if self.u >= 2.0 * self.omega:
            warnings.warn(
                f"u = {self.u} >= 2 omega: photon ladder unbounded below, "
                "truncated diagonalization will not converge",
                ContinuumRegimeWarning,
                stacklevel=2,
            )

    @property
    def d_coefficient(self) -> float:
        """A-square prefactor d = kappa g^2 / delta."""
        return self.kappa * self.g * self.g / self.delta

    @property
    def g_prime(self) -> float:
        """Combined coupling g' = g (1 + tau)."""
        return self.g * (1.0 + self.tau)

    @property
    def trk_satisfied(self) -> bool:
        return self.kappa >= 1.0

    def replace(self, **changes) -> "ModelParams":
        return dataclasses.replace(self, **changes)


def parity_of(n, k):
    """Parity (-1)^(n+k) of basis state |n, k>.  Accepts arrays."""
    return 1 - 2 * ((np.asarray(n) + np.asarray(k)) & 1)


@dataclass(frozen=True)
class BasisSpec:
    """Truncated collective-spin x Fock basis, optionally parity restricted."""

    n_atoms: int
    n_max: int
    sector: str = FULL

    def __post_init__(self):
        if self.sector not in SECTORS:
            raise SectorMismatch(
                f"unknown sector {self.sector!r}, expected one of {SECTORS}"
            )
        if self.n_atoms < 1:
            raise ValueError(f"n_atoms must be >= 1, got {self.n_atoms}")
        if self.n_max < 0:
            raise ValueError(f"n_max must be >= 0, got {self.n_max}")

    @property
    def full_dimension(self) -> int:
        return (self.n_max + 1) * (self.n_atoms + 1)

    def state_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Photon numbers and spin ladder indices of the basis states, in
        lexicographic (n, k) order."""
        ns, ks = np.meshgrid(
            np.arange(self.n_max + 1), np.arange(self.n_atoms + 1), indexing="ij"
        )
        ns, ks = ns.ravel(), ks.ravel()
        if self.sector == EVEN:
            keep = (ns + ks) % 2 == 0
        elif self.sector == ODD:
            keep = (ns + ks) % 2 == 1
        else:
            return ns, ks
        return ns[keep], ks[keep]

    @property
    def dimension(self) -> int:
        if self.sector == FULL:
            return self.full_dimension
        return self.state_arrays()[0].size

    def index_map(self) -> np.ndarray:
        """(n_max+1, N+1) lookup of basis indices; -1 marks excluded states."""
        ns, ks = self.state_arrays()
        lookup = -np.ones((self.n_max + 1, self.n_atoms + 1), dtype=np.int64)
        lookup[ns, ks] = np.arange(ns.size)
        return lookup

    def embedding_indices(self) -> np.ndarray:
        """Positions of this basis's states inside the full-sector enumeration."""
        ns, ks = self.state_arrays()
        return ns * (self.n_atoms + 1) + ks

    def with_sector(self, sector: str) -> "BasisSpec":
        return BasisSpec(self.n_atoms, self.n_max, sector)


@dataclass(eq=False)
class SparseHamiltonian:
    """Real symmetric matrix stored as its upper triangle (diagonal included).

    ``rows``, ``cols``, ``vals`` are parallel arrays with rows <= cols; the
    symmetric action applies every strictly-upper entry at (row, col) and
    (col, row).
    """

    dim: int
    rows: np.ndarray = field(repr=False)
    cols: np.ndarray = field(repr=False)
    vals: np.ndarray = field(repr=False)
    basis: BasisSpec

    def __post_init__(self):
        self._csr = None

    @property
    def nnz_upper(self) -> int:
        return self.vals.size

    def to_csr(self) -> sp.csr_matrix:
        """Full symmetric matrix in CSR form (cached)."""
        if self._csr is None:
            upper = sp.coo_matrix(
                (self.vals, (self.rows, self.cols)), shape=(self.dim, self.dim)
            ).tocsr()
            strict = sp.triu(upper, k=1)
            self._csr = (upper + strict.T).tocsr()
        return self._csr

    def to_dense(self) -> np.ndarray:
        return self.to_csr().toarray()

    def matvec(self, v: np.ndarray) -> np.ndarray:
        return matvec(self, v)


def matvec(h: SparseHamiltonian, v: np.ndarray) -> np.ndarray:
    """Apply the symmetric operator to a state vector."""
    v = np.asarray(v)
    if v.shape != (h.dim,):
        raise DimensionMismatch(f"vector shape {v.shape} does not match dim {h.dim}")
    return h.to_csr() @ v


def build_hamiltonian(
    params: ModelParams, basis: BasisSpec, dim_cap: int = DIM_CAP
) -> SparseHamiltonian:
    """Assemble the Hamiltonian restricted to the basis's parity sector.

    Ladder convention on the j = N/2 manifold, written with k = m + N/2:
    raising carries sqrt((k+1)(N-k)), lowering sqrt(k(N-k+1)).  All couplings
    move (n + k) by 0 or 2, so in lexicographic (n, k) order every
    off-diagonal entry lands strictly above the diagonal.
    """
    if basis.n_atoms != params.n_atoms:
        raise ValueError(
            f"basis atom count {basis.n_atoms} != params atom count {params.n_atoms}"
        )
    if basis.n_max < 1:
        raise ValueError(f"n_max must be >= 1 to assemble couplings, got {basis.n_max}")
    if basis.full_dimension > dim_cap:
        raise DimensionOverflow(
            f"basis dimension {basis.full_dimension} exceeds cap {dim_cap}"
        )

    n_at = params.n_atoms
    d = params.d_coefficient
    ns, ks = basis.state_arrays()
    dim = ns.size
    lookup = basis.index_map()

    rows = [np.arange(dim)]
    cols = [np.arange(dim)]
    jz = ks - n_at / 2.0
    vals = [
        params.omega * ns
        + params.delta * jz
        + (params.u / n_at) * ns * jz
        + d * (2.0 * ns + 1.0)
    ]

    # rotating part: (n, k) -> (n+1, k-1)
    m = (ns + 1 <= basis.n_max) & (ks >= 1)
    w = (
        (params.g / np.sqrt(n_at))
        * np.sqrt(ns[m] + 1.0)
        * np.sqrt(ks[m] * (n_at - ks[m] + 1.0))
    )
    rows.append(lookup[ns[m], ks[m]])
    cols.append(lookup[ns[m] + 1, ks[m] - 1])
    vals.append(w)

    # counter-rotating part: (n, k) -> (n+1, k+1)
    m = (ns + 1 <= basis.n_max) & (ks + 1 <= n_at)
    w = (
        (params.g * params.tau / np.sqrt(n_at))
        * np.sqrt(ns[m] + 1.0)
        * np.sqrt((ks[m] + 1.0) * (n_at - ks[m]))
    )
    rows.append(lookup[ns[m], ks[m]])
    cols.append(lookup[ns[m] + 1, ks[m] + 1])
    vals.append(w)

    # A-square off-diagonal: (n, k) -> (n+2, k)
    m = ns + 2 <= basis.n_max
    w = d * np.sqrt((ns[m] + 1.0) * (ns[m] + 2.0))
    rows.append(lookup[ns[m], ks[m]])
    cols.append(lookup[ns[m] + 2, ks[m]])
    vals.append(w)

    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    vals = np.concatenate([np.asarray(v, dtype=float) for v in vals])
    keep = vals != 0.0
    # keep the diagonal even when it is zero so the shape survives extraction
    keep[:dim] = True
    return SparseHamiltonian(
        dim=dim, rows=rows[keep], cols=cols[keep], vals=vals[keep], basis=basis
    )
