import numpy as np

# ---- Section 5.2 model ----
# states 1..6 (0-based 0..5); components {0,1},{2,3},{4,5}
def A52():
    I = np.ones((2,2)); O = np.zeros((2,2))
    return np.block([[I,I,O],[O,I,I],[I,I,I]])

def W52(eps, s):
    u = np.sin(1.0/eps)/3.0 + 1.0
    A = A52()
    W = np.zeros((6,6))
    for i in range(6):
        for j in range(6):
            if A[i,j] == 0: continue
            bi, bj = i//2, j//2
            if   (bi,bj) == (0,1) or (bi,bj) == (1,2): phi = np.log(eps)
            elif (bi,bj) == (2,1): phi = s*np.log(eps)
            elif (bi,bj) == (2,0): phi = u*np.log(eps)
            else: phi = 0.0
            W[i,j] = np.exp(phi)
    return W

def perron(W):
    # right vec v: Wv=lam v ; left vec u: u^T W = lam u^T
    vals, vecs = np.linalg.eig(W)
    k = np.argmax(vals.real)
    lam = vals[k].real
    v = np.abs(vecs[:,k].real); v = v/v.sum()
    vals2, vecs2 = np.linalg.eig(W.T)
    k2 = np.argmax(vals2.real)
    u = np.abs(vecs2[:,k2].real)
    u = u/(u@v)
    return lam, v, u

def gibbs_marginals(W):
    lam, nu, h = perron(W)   # nu = right (conformal), h = left (eigenfunction)
    mu = h*nu                # mu([i]) = h(i) nu(i), normalized h.nu=1
    return lam, mu

def seq_eps(target, kind):
    # eps_n = 1/(2 pi n + pi/2) -> sin(1/eps)=+1 ; 1/(2 pi n + 3pi/2) -> -1
    off = np.pi/2 if kind=='+1' else 3*np.pi/2
    n = max(1, int(round((1.0/target - off)/(2*np.pi))))
    return 1.0/(2*np.pi*n + off)

for s, epslist in [(0.5,[1e-6]),(1.5,[1e-8]),(7/9,[1e-6,1e-7,1e-8])]:
    for kind in ['+1','-1']:
        for te in epslist:
            e = seq_eps(te, kind)
            lam, mu = gibbs_marginals(W52(e,s))
            m = [mu[0]+mu[1], mu[2]+mu[3], mu[4]+mu[5]]
            # delta_eps from Theorem 1.4
            lam23 = 2+2*e**((1+s)/2)
            d1 = (lam-lam23)*(lam+lam23-4)
            d2 = (lam-2)**2; d3 = d2
            dsum = d1+d2+d3
            print(f"s={s:.4f} sin{kind} eps={e:.3e} lam={lam:.12f} marg=({m[0]:.5f},{m[1]:.5f},{m[2]:.5f}) delta=({d1/dsum:.5f},{d2/dsum:.5f},{d3/dsum:.5f})")
