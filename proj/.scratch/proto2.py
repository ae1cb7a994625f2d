import numpy as np

def A53():
    rows = ["11111111","11111111","11110000","11111100","11001111",
            "11111111","11111111","11111111"]
    return np.array([[int(c) for c in r] for r in rows], float)

def W53(eps):
    A = A53()
    W = np.zeros((8,8))
    Sig = {(1,1),(1,2),(2,1),(2,2),(3,3),(3,4),(4,3),(4,4),
           (5,5),(5,6),(6,5),(6,6),(7,7),(7,8),(8,7),(8,8)}
    for i0 in range(8):
        for j0 in range(8):
            if A[i0,j0]==0: continue
            i,j = i0+1, j0+1
            if   (i,j)==(4,3): w = 1.1*eps+1
            elif (i,j)==(4,4): w = 1.1*eps+2
            elif (i,j) in Sig and i==j: w = 2.0
            elif (i,j) in Sig: w = 1.0
            elif (i,j) in {(4,5),(4,6)}: w = eps**4
            elif (i,j) in {(5,7),(6,7),(7,6),(8,6)}: w = eps/10
            else: w = eps
            W[i0,j0]=w
    return W

def perron(W):
    vals, vecs = np.linalg.eig(W)
    k = np.argmax(vals.real); lam=vals[k].real
    v = np.abs(vecs[:,k].real); v=v/v.sum()          # right vec, prob-normalized
    vals2, vecs2 = np.linalg.eig(W.T)
    k2=np.argmax(vals2.real); u=np.abs(vecs2[:,k2].real)
    u = u/(u@v)                                       # left vec, u.v=1
    return lam, v, u

def comps(): return [[0,1],[2,3],[4,5],[6,7]]

def mv_entry(W, lam_full, nu_full, M, Mp):
    # nu_full: the full-system pairing vector used in mV
    SM, SMp = comps()[M], comps()[Mp]
    WM  = W[np.ix_(SM,SM)]
    WMp = W[np.ix_(SMp,SMp)]
    lamM, nuM, hM   = perron(WM)     # hM normalized hM.nuM=1, nuM prob
    lamMp, nuMp, hMp = perron(WMp)
    num = sum(hM[a]*W[SM[a],SMp[b]]*nu_full[SMp[b]] for a in range(2) for b in range(2))
    den = sum(hMp[b]*nu_full[SMp[b]] for b in range(2))
    return num/den

def mv_matrix(W, which):
    lam, nu, h = perron(W)
    vec = nu if which=='nu' else h/h.sum()
    V = np.zeros((4,4))
    for M in range(4):
        for Mp in range(4):
            if M==Mp:
                SM=comps()[M]; V[M,M]=perron(W[np.ix_(SM,SM)])[0]
            else:
                V[M,Mp]=mv_entry(W,lam,vec,M,Mp)
    return lam, V

for eps in [1e-2, 1e-3]:
    W = W53(eps)
    lam, Vnu = mv_matrix(W,'nu')
    _,  Vh  = mv_matrix(W,'h')
    disp = np.array([[3,2*eps,2*eps,2*eps],
                     [2*eps,1.1*eps+3,eps**4,0],
                     [2*eps,eps,3,0],
                     [2*eps,2*eps,0,3]])
    lam_, nu, h = perron(W)
    # displayed (3,4),(4,3) with g := try both vectors
    for name,vec in [('nu',nu),('h',h)]:
        e34 = eps/5*(vec[6]+10*vec[7])/(vec[6]+vec[7])
        e43 = eps/5*(10*vec[4]+vec[5])/(vec[4]+vec[5])
        print(f"eps={eps:g} g={name}: disp34={e34:.12e} disp43={e43:.12e}")
    print("mv(nu) 34,43:", Vnu[2,3], Vnu[3,2], " perron(mVnu)-lam:", np.max(np.abs(np.linalg.eigvals(Vnu))).real-lam)
    print("mv(h)  34,43:", Vh[2,3],  Vh[3,2],  " perron(mVh)-lam :", np.max(np.abs(np.linalg.eigvals(Vh))).real-lam)
    print("lam full:", lam, " lam(2):", perron(W53(eps)[np.ix_([2,3],[2,3])])[0], "3+1.1eps:", 3+1.1*eps)

# lambda({2,3,4},eps) expansion check and diagnostic ratio
import numpy.linalg as la
def lam_sub(W, members):
    S=[s for M in members for s in comps()[M]]
    return perron(W[np.ix_(S,S)])[0]

print()
for eps in [1e-3,1e-4,1e-5,1e-6,1e-7,1e-8]:
    W=W53(eps)
    l234=lam_sub(W,[1,2,3]); l2=lam_sub(W,[1])
    lam,Vnu=mv_matrix(W,'nu')
    lv234=np.max(np.abs(la.eigvals(Vnu[np.ix_([1,2,3],[1,2,3])]))).real
    lv2=Vnu[1,1]
    R=(l234-l2)/(lv234-lv2)
    print(f"eps={eps:.0e} l234-3-1.1e={l234-3-1.1*eps:.6e}  sqrt6/2 e^2.5={np.sqrt(6)/2*eps**2.5:.6e}  R={R:.6e}")
