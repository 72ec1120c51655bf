"""Independent reference constructions used to validate the production code.

Everything here is built from explicit dense operator matrices via tensor
products, deliberately sharing no code with the sparse assembler.
"""

import numpy as np


def boson_ops(n_max):
    """Annihilation operator and number operator on the (n_max+1)-dim Fock space."""
    a = np.zeros((n_max + 1, n_max + 1))
    for n in range(1, n_max + 1):
        a[n - 1, n] = np.sqrt(n)
    return a, a.T @ a


def spin_ops(n_atoms):
    """Collective spin matrices on the j = N/2 multiplet, basis ordered by
    increasing m (m = -j ... +j, i.e. ladder index k = 0 ... N)."""
    j = n_atoms / 2.0
    dim = n_atoms + 1
    jz = np.diag(np.arange(dim) - j)
    jp = np.zeros((dim, dim))
    for k in range(dim - 1):
        m = k - j
        jp[k + 1, k] = np.sqrt(j * (j + 1) - m * (m + 1))
    return jz, jp, jp.T


def dense_hamiltonian(params, n_max):
    """Kron-product Hamiltonian on the full (n_max+1)(N+1)-dim space,
    ordered lexicographically in (n, k)."""
    n_at = params.n_atoms
    a, num = boson_ops(n_max)
    jz, jp, jm = spin_ops(n_at)
    idb = np.eye(n_at + 1)
    idf = np.eye(n_max + 1)
    ad = a.T
    # (a+ + a)^2 normal ordered before truncation, so the diagonal stays
    # 2n + 1 up to and including the top photon level
    asq = a @ a + ad @ ad + 2.0 * num + idf
    h = (
        params.omega * np.kron(num, idb)
        + params.delta * np.kron(idf, jz)
        + (params.g / np.sqrt(n_at)) * (np.kron(ad, jm) + np.kron(a, jp))
        + (params.g * params.tau / np.sqrt(n_at)) * (np.kron(ad, jp) + np.kron(a, jm))
        + (params.u / n_at) * np.kron(num, jz)
        + params.d_coefficient * np.kron(asq, idb)
    )
    return h


def dense_standard_dicke(omega, delta, lam, n_atoms, n_max):
    """Plain Dicke Hamiltonian omega a+a + delta Jz + (lam/sqrt(N)) (a+ + a)(J+ + J-),
    assembled from the explicit operators only."""
    a, num = boson_ops(n_max)
    jz, jp, jm = spin_ops(n_atoms)
    idb = np.eye(n_atoms + 1)
    idf = np.eye(n_max + 1)
    x = a + a.T
    jx2 = jp + jm
    return (
        omega * np.kron(num, idb)
        + delta * np.kron(idf, jz)
        + (lam / np.sqrt(n_atoms)) * np.kron(x, jx2)
    )


def parity_vector(n_atoms, n_max):
    """(-1)^(n+k) for every state of the full lexicographic basis."""
    ns, ks = np.meshgrid(np.arange(n_max + 1), np.arange(n_atoms + 1), indexing="ij")
    return (1 - 2 * ((ns + ks) % 2)).ravel()


def sample_transition_params(rng):
    """Random parameters with a real critical coupling, sampled away from
    the transition and with the broken minimum inside the grid-minimizer's
    search box."""
    from dickestark import ModelParams
    from dickestark.meanfield_zero import critical_coupling_zero, order_parameters

    while True:
        delta = float(rng.uniform(0.2, 2.0))
        u = float(rng.uniform(-1.0, 1.8))
        kappa = float(rng.uniform(0.0, 2.5))
        tau_min = max(0.0, 2.0 * np.sqrt(kappa) - 1.0)
        tau = float(rng.uniform(tau_min + 0.2, tau_min + 3.0))
        base = ModelParams(omega=1.0, delta=delta, u=u, tau=tau, kappa=kappa)
        crit = critical_coupling_zero(base)
        if not crit.exists:
            continue
        factor = float(rng.choice([rng.uniform(0.3, 0.95), rng.uniform(1.05, 1.8)]))
        params = base.replace(g=factor * crit.value)
        if order_parameters(params).alpha > 2.5:
            continue
        return params
