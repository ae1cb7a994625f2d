import numpy as np
from itertools import product

# Two-component toy: components k=1: states {0,1}, k=2: states {2,3}; A = all ones 4x4 (A_MM=M=ones)
# phi(eps) = phi + phi1*eps + ... on all A-pairs;  e^{psi(eps)}chi_N = psi1*eps + ... on cross pairs.
# Weighted matrix: W(ij) = e^{phi(eps,ij)} * (i,j in same comp)  +  e^{phi(eps,ij)} * (psi-part) cross:
#   on N: e^{Phi} = e^{phi(eps)} * e^{psi(eps)}. With table coeffs: e^{psi(eps,ij)} = sum_l psi_l(ij) eps^l + o.

def perron(W):
    vals, vecs = np.linalg.eig(W)
    k = np.argmax(vals.real); lam = vals[k].real
    v = np.abs(vecs[:,k].real); v = v/v.sum()
    vals2, vecs2 = np.linalg.eig(W.T)
    k2 = np.argmax(vals2.real); u = np.abs(vecs2[:,k2].real); u = u/(u@v)
    return lam, v, u   # v=nu (right), u=h (left)

def F_coeffs(phitabs, order):
    # phitabs: list [phi1, phi2, ...] (matrices). F_j = coeff of eps^j in exp(sum_l phi_l eps^l), entrywise
    n = order
    F = [np.ones_like(phitabs[0])] + [np.zeros_like(phitabs[0]) for _ in range(n)]
    # exp series: F = sum over partitions; do via exp of truncated polynomial, entrywise on each (i,j)
    sh = phitabs[0].shape
    for i in range(sh[0]):
        for j in range(sh[1]):
            c = np.zeros(n+1); c[0]=0.0
            for l,t in enumerate(phitabs[:n]): c[l+1]=t[i,j]
            e = np.zeros(n+1); e[0]=1.0
            # exp of power series: e' = c' e  => k*e_k = sum_{m=1..k} m*c_m*e_{k-m}
            for k in range(1,n+1):
                s=0.0
                for m in range(1,k+1): s += m*c[m]*e[k-m]
                e[k]=s/k
            for k in range(n+1): F[k][i,j]=e[k]
    return F

def lambda_series(W0, phitabs, order):
    # W0: component weighted matrix at eps=0 (e^{phi}); operator L = W0^T with mult tables
    lam, nu, h = perron(W0)
    d = W0.shape[0]
    P0 = np.outer(h, nu)    # P0 f = nu(f) h ;  as matrix acting on column f: h * (nu . f)
    L0 = W0.T
    F = F_coeffs(phitabs, order)
    Ls = [ (W0*F[j]).T for j in range(order+1) ]   # L_j, j=0..order ; L_0 = L0
    S = np.linalg.solve(L0 - P0 - lam*np.eye(d), np.eye(d) - P0)
    lams = [lam]
    Ps = [P0]
    for n in range(0, order):      # compute lam_{n+1}
        tot = 0.0
        for j in range(1, n+2):
            tot += nu @ (Ps[n+1-j] @ (Ls[j] @ h))
        lams.append(tot)
        # P_{n+1} = sum_{i=1}^{n+1} P_{n+1-i} (lam_i I - L_i) S
        Pn = np.zeros((d,d))
        for i in range(1, n+2):
            Pn += Ps[n+1-i] @ (lams[i]*np.eye(d) - Ls[i]) @ S
        Ps.append(Pn)
    return lams, (lam,nu,h,S,P0)

# --- test lambda_series against finite differences on a random 3-state component
rng = np.random.default_rng(42)
d=3
phi0 = rng.normal(size=(d,d))*0.3
phi1 = rng.normal(size=(d,d))*0.5
phi2 = rng.normal(size=(d,d))*0.5
def Wc(eps): return np.exp(phi0 + phi1*eps + phi2*eps**2)
W0 = np.exp(phi0)
lams,_ = lambda_series(W0,[phi1,phi2],3)
hh=1e-4
l = lambda e: perron(Wc(e))[0]
fd1 = (l(hh)-l(-hh))/(2*hh)          # careful: eps<0 not physical but function analytic
fd2 = (l(hh)-2*l(0)+l(-hh))/hh**2/2
print("series lam1,lam2:", lams[1], lams[2])
print("fd     lam1,lam2:", fd1, fd2, " rel err:", abs(fd1/lams[1]-1), abs(fd2/lams[2]-1))

# --- two-component model, empirical c2 vs classifier
# components: 2x2 ones with phi0 = 0; phi1 = a_k (constant per component) -> lam_{k,1} = lam * a_k
def build(a1,a2, s12, s21, c12, c13):   # psi_{s12} = c12 on cross block 12 etc.
    # full 4x4: W(eps): diag blocks exp(eps*a_k)*ones; cross blocks: e^{phi(eps)}*psihat(eps)
    def W(eps):
        Wm = np.zeros((4,4))
        Wm[:2,:2] = np.exp(a1*eps)
        Wm[2:,2:] = np.exp(a2*eps)
        Wm[:2,2:] = np.exp(a1*eps)*c12*eps**s12   # e^{phi(eps)} approx using comp-1 phi on cross (choice)
        Wm[2:,:2] = np.exp(a2*eps)*c13*eps**s21
        return Wm
    return W

a1,a2 = 0.7, 0.3       # lam_{1,1}=2*0.7=1.4, lam_{2,1}=0.6 -> s=1
for (s12,s21,label) in [(1,1,"2s=s12+s21"),(0,1,"2s>s12+s21 (0+1=1<2)"),(2,3,"2s<s12+s21 (5>2)")]:
    Wf = build(a1,a2,s12,s21,1.0,1.0)
    # empirical c2 at small eps: c2(eps)=|l2-l1|(l2-l1)/(mV12*mV21)
    for eps in [1e-5, 1e-6]:
        W = Wf(eps)
        lam, nu, h = perron(W)
        l1 = perron(W[:2,:2])[0]; l2 = perron(W[2:,2:])[0]
        # mV entries (T1 empty)
        def mv(M,Mp):
            SM=[0,1] if M==0 else [2,3]; SMp=[0,1] if Mp==0 else [2,3]
            lamM,nuM,hM = perron(W[np.ix_(SM,SM)])
            lamMp,nuMp,hMp = perron(W[np.ix_(SMp,SMp)])
            num=sum(hM[a]*W[SM[a],SMp[b]]*nu[SMp[b]] for a in range(2) for b in range(2))
            den=sum(hMp[b]*nu[SMp[b]] for b in range(2))
            return num/den
        c2e = abs(l2-l1)*(l2-l1)/(mv(0,1)*mv(1,0))
        print(f"{label} eps={eps:g}: empirical c2 = {c2e:.6f}")
    # classifier: s=1; lam_{k,1}=2*a_k; d(kk') = nu_{k'}( L_{A_kk',phi}(h_k psi_s) )
    lam0 = 2.0
    lam11, lam21 = 2*a1, 2*a2
    # d(12): pairs i in comp1, j in comp2, weight e^{phi(ij)}=1, psi_s=1: sum_j nu2(j) sum_i h1(i)*1*1
    # h1=(1,1) (ones comp, nu1=(.5,.5), h1 normalized h.nu=1 -> h=(1,1)); nu2 prob
    d12 = sum(0.5*1*1 for _ in range(1))*2  # = sum_{j} nu2(j) * sum_i h1(i) = 1 * 2 = 2
    d21 = 2.0
    print("predicted c2 (case 2s=s12+s21):", abs(lam11-lam21)*(lam11-lam21)/(d12*d21))
