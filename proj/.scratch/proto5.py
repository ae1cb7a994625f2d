import numpy as np, cmath

def perron(W):
    vals, vecs = np.linalg.eig(W)
    k = np.argmax(vals.real); lam = vals[k].real
    v = np.abs(vecs[:,k].real); v = v/v.sum()
    vals2, vecs2 = np.linalg.eig(W.T)
    k2 = np.argmax(vals2.real); u = np.abs(vecs2[:,k2].real); u = u/(u@v)
    return lam, v, u

def W52(eps, s):
    u = np.sin(1.0/eps)/3.0 + 1.0
    I = np.ones((2,2)); O=np.zeros((2,2))
    A = np.block([[I,I,O],[O,I,I],[I,I,I]])
    W = np.zeros((6,6))
    for i in range(6):
        for j in range(6):
            if A[i,j]==0: continue
            bi,bj=i//2,j//2
            if   (bi,bj) in [(0,1),(1,2)]: W[i,j]=eps
            elif (bi,bj)==(2,1): W[i,j]=eps**s
            elif (bi,bj)==(2,0): W[i,j]=eps**u
            else: W[i,j]=1.0
    return W

def cardano_lam(eps, s):
    u = np.sin(1.0/eps)/3.0 + 1.0
    K = 108*eps**2*eps**u + 12*cmath.sqrt(-12*eps**(3*(s+1)) + 81*eps**4*eps**(2*u))
    K13 = K**(1./3)   # principal cube root
    x = K13/3 + 4*eps**(s+1)/K13 + 2
    return x

for s in [0.5, 1.0, 1.5, 7/9]:
    for eps in [1e-2, 1e-3, 1e-4, 1e-5]:
        lam = perron(W52(eps,s))[0]
        lc = cardano_lam(eps,s)
        print(f"s={s:.4f} eps={eps:.0e}: eig={lam:.15f} cardano={lc:.15f} diff={abs(lam-lc.real):.2e} im={abs(lc.imag):.1e}")

# criterion 5-ish: random models
rng = np.random.default_rng(7)
def random_model(d, sigma3=True, seed=0):
    r = np.random.default_rng(seed)
    while True:
        A = (r.random((d,d))<0.6).astype(float)
        # ensure irreducible: add a cycle
        for i in range(d): A[i,(i+1)%d]=1
        if sigma3:
            B = A*(r.random((d,d))<0.5)
            for i in range(d): pass
            # ensure B has a cycle: force B[0,0]=A[0,0]=1
            A[0,0]=1; B[0,0]=1
        else:
            B = np.triu(A,k=1)  # acyclic
        phi = r.normal(size=(d,d))*0.5
        return A,B,phi

for seed in range(5):
    d = 4+seed%3
    A,B,phi = random_model(d,True,seed)
    # lam(B,phi): max over SCC... just: spectral radius of B*exp(phi)
    lamB = np.max(np.abs(np.linalg.eigvals(B*np.exp(phi))))
    for eps in [1e-6, 1e-8]:
        W = A*np.exp(phi)*np.where((A==1)&(B==0), eps*4/4, 1.0)  # psi=log eps on N
        W = A*np.exp(phi); W[(A==1)&(B==0)] *= eps
        lamE = np.max(np.abs(np.linalg.eigvals(W)))
        print(f"seed={seed} d={d} eps={eps:.0e}: |P(A,Phi)-P(B,phi)|={abs(np.log(lamE)-np.log(lamB)):.3e}")
    A,B,phi = random_model(d,False,seed+100)
    W = A*np.exp(phi); W[(A==1)&(B==0)] *= 1e-8**4
    lamE = np.max(np.abs(np.linalg.eigvals(W)))
    print(f"seed={seed} acyclic: P={np.log(lamE) if lamE>0 else -np.inf:.2f}")
