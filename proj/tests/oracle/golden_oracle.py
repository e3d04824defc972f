#!/usr/bin/env python3
"""Independent reference for the golden run.

Computes every output file of `lingnet analyze` for a config, using only the
Python stdlib (email, unicodedata, json) and numpy. Written from the output
contract, not from the C++ sources.

usage: golden_oracle.py CONFIG OUTDIR
"""
import configparser
import hashlib
import json
import math
import os
import sys
import unicodedata
from datetime import datetime, timezone
from email import message_from_bytes, policy
from email.utils import parsedate_tz, mktime_tz

import numpy as np

# ---------------------------------------------------------------- formatting

def fmt(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "NA"
    if isinstance(x, int):
        return str(x)
    s = "%.4f" % x
    return "0.0000" if s == "-0.0000" else s


def jnum(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return None
    if isinstance(x, int):
        return x
    return float(fmt(x))


def write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def csv(rows):
    return "".join(",".join(r) + "\n" for r in rows)


def cpw(s):
    return len(s)


def render(title, rows):
    w = [max(cpw(r[c]) for r in rows) for c in range(len(rows[0]))]
    out = [f"== {title} =="]
    for r in rows:
        cells = [r[0] + " " * (w[0] - cpw(r[0]))]
        cells += [" " * (w[c] - cpw(r[c])) + r[c] for c in range(1, len(r))]
        out.append("  ".join(cells).rstrip())
    return "\n".join(out) + "\n\n"

# ---------------------------------------------------------------- unicode

WS = {chr(c) for c in [9, 10, 11, 12, 13, 28, 29, 30, 31, 32, 0x85, 0xA0, 0x1680, 0x2028, 0x2029, 0x202F, 0x205F, 0x3000]}
WS |= {chr(c) for c in range(0x2000, 0x200B)}


def isspace(c):
    return c in WS


def cat(c):
    return unicodedata.category(c)


def lower(s):
    out = []
    for c in s:
        l = c.lower()
        out.append(l if len(l) == 1 else c)
    return "".join(out)


def strip(s):
    i, j = 0, len(s)
    while i < j and isspace(s[i]):
        i += 1
    while j > i and isspace(s[j - 1]):
        j -= 1
    return s[i:j]

# ---------------------------------------------------------------- ingest

def norm_author(raw):
    raw = raw.strip()
    if "<" in raw and ">" in raw[raw.rfind("<"):]:
        a = raw[raw.rfind("<") + 1: raw.find(">", raw.rfind("<"))]
    else:
        a = ""
        for tok in raw.split():
            if "@" in tok:
                a = tok
                break
        if not a:
            a = raw
    return a.strip().lower()


def parse_iso(s):
    s = s.strip()
    try:
        if s.endswith("Z"):
            s = s[:-1] + "+00:00"
        d = datetime.fromisoformat(s)
    except ValueError:
        return None
    if d.tzinfo is None:
        d = d.replace(tzinfo=timezone.utc)
    return int(d.timestamp() // 1)


def parse_rfc(s):
    t = parsedate_tz(s)
    if t is None or t[0] < 1000:
        return None
    return int(mktime_tz(t))


def finish(entries):
    msgs, seen, prev = [], set(), 0
    for mid, irt, author, ts, body in entries:
        if mid in seen:
            continue
        seen.add(mid)
        if ts is None:
            ts = prev
        prev = ts
        body = body.replace("\r\n", "\n").rstrip("\n")
        msgs.append(dict(id=mid, irt=irt, author=author, ts=ts, body=body))
    return msgs


def first_plain(m):
    if m.is_multipart():
        for part in m.get_payload():
            r = first_plain(part)
            if r is not None:
                return r
        return None
    if m.get_content_type() != "text/plain":
        return None
    raw = m.get_payload(decode=True) or b""
    cs = (m.get_content_charset() or "utf-8").lower()
    if cs in ("us-ascii", "ascii", "utf-8", "utf8"):
        cs = "utf-8"
    return raw.decode(cs, errors="replace")


def load_mbox(path):
    data = open(path, "rb").read().replace(b"\r\n", b"\n")
    chunks, cur = [], None
    for line in data.split(b"\n"):
        if line.startswith(b"From "):
            if cur is not None:
                chunks.append(cur)
            cur = []
        elif cur is not None:
            cur.append(line[1:] if line.startswith(b">") and line.lstrip(b">").startswith(b"From ") else line)
    if cur is not None:
        chunks.append(cur)
    entries = []
    for ch in chunks:
        m = message_from_bytes(b"\n".join(ch), policy=policy.compat32)
        irt = m.get("In-Reply-To")
        irt = irt.strip() if irt else None
        if irt and "<" in irt:
            irt = irt[irt.find("<"): irt.find(">", irt.find("<")) + 1]
        d = m.get("Date")
        entries.append((m["Message-ID"].strip(), irt or None, norm_author(m["From"]),
                        parse_rfc(d) if d else None, first_plain(m) or ""))
    return finish(entries)


def load_jsonl(path):
    entries = []
    for line in open(path, encoding="utf-8"):
        if not line.strip():
            continue
        o = json.loads(line)
        entries.append((o["id"], o.get("in_reply_to") or None, norm_author(o["author"]),
                        parse_iso(o["date"]), o["body"]))
    return finish(entries)

# ---------------------------------------------------------------- lexicon

def load_lexicon(manifest):
    base = os.path.dirname(manifest)
    kv = {}
    for line in open(manifest, encoding="utf-8"):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        k, v = line.split("=", 1)
        kv[k.strip()] = v.strip()
    def lines(rel):
        return [l.rstrip("\n") for l in open(os.path.join(base, rel), encoding="utf-8")]
    lex = {"known": {lower(w.strip()) for w in lines(kv["wordlist"]) if w.strip()},
           "stop": {lower(w.strip()) for w in lines(kv["stopwords"]) if w.strip()},
           "contr": {lower(w.strip()).replace("’", "'") for w in lines(kv["contractions"]) if w.strip()},
           "syn": set(), "tags": {}, "rules": []}
    for rel in kv["wordnet_index"].split():
        for l in lines(rel):
            if not l or l.startswith(" "):
                continue
            lex["syn"].add(lower(l.split()[0]).replace("_", " "))
    for l in lines(kv["tag_lexicon"]):
        if not l.strip():
            continue
        w, t = l.split("\t")
        t = ([x.strip() for x in t.split(",") if x.strip()] or [t.strip()])[0]
        if len(w) > 1 and w[0] == "-" and w[1].isalpha():
            lex["rules"].append((w[1:], t))
        elif w not in lex["tags"]:
            lex["tags"][w] = t
    hashes = {}
    for k in ("wordlist", "stopwords", "wordnet_index", "contractions", "tag_lexicon"):
        h = hashlib.sha256()
        for rel in kv[k].split():
            h.update(open(os.path.join(base, rel), "rb").read())
        hashes[k] = h.hexdigest()
    return lex, hashes

# ---------------------------------------------------------------- text

def is_wordch(c):
    k = cat(c)
    return k[0] in "LM" or k == "Nd"


def tokenize(s):
    toks, i, n = [], 0, len(s)
    while i < n:
        c = s[i]
        if isspace(c):
            i += 1
        elif is_wordch(c):
            j = i + 1
            while j < n:
                if is_wordch(s[j]):
                    j += 1
                elif s[j] in "'’" and j + 1 < n and is_wordch(s[j + 1]):
                    j += 2
                else:
                    break
            toks.append(s[i:j])
            i = j
        else:
            toks.append(c)
            i += 1
    return toks


def key(t):
    return lower(t).replace("’", "'")


def classify(lex, t):
    k = key(t)
    punct = all(cat(c)[0] == "P" for c in t)
    word = any(cat(c)[0] == "L" for c in t) and not any(cat(c) == "Nd" for c in t)
    kw = word and k in lex["known"]
    return dict(punct=punct, word=word, kw=kw, sw=word and k in lex["stop"],
                syn=word and k in lex["syn"], contr=k in lex["contr"], key=k)


def split_sentences(text):
    paras, cur = [], []
    for line in text.split("\n"):
        if strip(line) == "":
            if cur:
                paras.append("\n".join(cur))
            cur = []
        else:
            cur.append(line)
    if cur:
        paras.append("\n".join(cur))
    out = []
    for p in paras:
        start, i, n = 0, 0, len(p)
        while i < n:
            if p[i] in ".!?":
                e = i
                while e < n and p[e] in ".!?":
                    e += 1
                cut = e == n
                if not cut and isspace(p[e]):
                    k = e
                    while k < n and isspace(p[k]):
                        k += 1
                    cut = k < n and cat(p[k]) == "Lu"
                if cut:
                    out.append(p[start:e])
                    start = e
                i = e
            else:
                i += 1
        out.append(p[start:])
    return [s for s in (strip(x) for x in out) if s]


def strip_quotes(body):
    return "\n".join(l for l in body.split("\n") if not l.startswith(">"))


def tag(lex, toks):
    out = []
    for t in toks:
        if all(cat(c)[0] == "P" for c in t):
            out.append("PUNCT")
            continue
        t2 = t.replace("’", "'")
        if t2 in lex["tags"]:
            out.append(lex["tags"][t2]); continue
        l = lower(t2)
        if l in lex["tags"]:
            out.append(lex["tags"][l]); continue
        for suf, tg in lex["rules"]:
            if len(l) > len(suf) and l.endswith(suf):
                out.append(tg); break
        else:
            out.append("NN")
    return out


GROUPS = [("nouns", ["NN", "NNS", "NNP", "NNPS"]),
          ("modifiers", ["JJ", "JJR", "JJS", "RB", "RBR", "RBS", "RP"]),
          ("verbs", ["VB", "VBZ", "VBP", "VBN", "VBD", "VBG", "MD"]),
          ("function", ["IN", "DT", "PRP", "PRP$", "PDT", "TO", "CC", "WRB", "WDT", "WP", "WP$"]),
          ("other", ["CD", "EX", "UH", "FW"])]


def mean_sd(xs):
    if not xs:
        return None, None
    n = len(xs)
    m = 0.0
    for x in xs:
        m += x
    m /= n
    v = 0.0
    for x in xs:
        v += (x - m) * (x - m)
    return m, math.sqrt(v / n)


def pct(a, b):
    return None if b == 0 else 100.0 * a / b


def corpus_metrics(lex, texts):
    """texts: bodies after optional quote stripping. Returns ordered dict of tables."""
    nch = nsp = npu = ndi = nle = nvo = nup = 0
    toks_all, cls_all = [], []
    sent_rows, msg_rows = [], []
    tagc, ntag = {}, 0
    for text in texts:
        for c in text:
            nch += 1
            k = cat(c)
            if isspace(c):
                nsp += 1
            elif k[0] == "P":
                npu += 1
            elif k == "Nd":
                ndi += 1
            elif k[0] == "L":
                nle += 1
                if lower(c) in "aeiou":
                    nvo += 1
                if k == "Lu":
                    nup += 1
        mt = tokenize(text)
        toks_all += mt
        sents = split_sentences(text)
        msg_rows.append((len(text), len(mt), len(sents)))
        for s in sents:
            st = tokenize(s)
            cs = [classify(lex, t) for t in st]
            sent_rows.append((len(s), len(st), sum(1 for c in cs if c["kw"]),
                              sum(1 for c in cs if c["kw"] and c["syn"] and not c["sw"])))
            for tg in tag(lex, st):
                if tg == "PUNCT":
                    continue
                ntag += 1
                tagc[tg] = tagc.get(tg, 0) + 1
    cls_all = [classify(lex, t) for t in toks_all]
    nonsp = nch - nsp
    chars = [("n chars", nch), ("100|space|/|char|", pct(nsp, nch)),
             ("100|punct|/(|char|-|space|)", pct(npu, nonsp)),
             ("100|digit|/(|char|-|space|)", pct(ndi, nonsp)),
             ("100|letter|/(|char|-|space|)", pct(nle, nonsp)),
             ("100|vogal|/|letter|", pct(nvo, nle)),
             ("100|Uppercase|/|letter|", pct(nup, nle))]
    nt = len(toks_all)
    npt = sum(1 for c in cls_all if c["punct"])
    kws = [c for c in cls_all if c["kw"]]
    nkw = len(kws)
    def cnt(f):
        return sum(1 for c in cls_all if f(c))
    tokens = [("|tokens|", nt),
              ("(|chars|-|spaces|)/|tokens|", None if nt == 0 else nonsp / nt),
              ("100|tokens≠|/|tokens|", pct(len(set(toks_all)), nt)),
              ("100|punct|/|tokens|", pct(npt, nt)),
              ("100|kw|/(|tokens|-|punct|)", pct(nkw, nt - npt)),
              ("100|kw≠|/|kw|", pct(len({c["key"] for c in kws}), nkw)),
              ("100|kwss|/|kw|", pct(cnt(lambda c: c["kw"] and c["syn"]), nkw)),
              ("100|kwsw|/|kw|", pct(cnt(lambda c: c["kw"] and c["sw"]), nkw)),
              ("100|ukwsw|/|kw|", pct(cnt(lambda c: c["word"] and not c["kw"] and c["sw"]), nkw)),
              ("100|kw sw with synset|/|kw|", pct(cnt(lambda c: c["kw"] and c["sw"] and c["syn"]), nkw)),
              ("100|sw without synset|/|kw|", pct(cnt(lambda c: c["kw"] and c["sw"] and not c["syn"]), nkw)),
              ("100|contractions|/|kw|", pct(cnt(lambda c: c["contr"]), nkw)),
              ("100|kw not sw no synset|/|kw|", pct(cnt(lambda c: c["kw"] and not c["sw"] and not c["syn"]), nkw)),
              ("100|kw not sw has synset|/|kw|", pct(cnt(lambda c: c["kw"] and not c["sw"] and c["syn"]), nkw))]
    classes = [("skw", lambda c: c["kw"]), ("skwss", lambda c: c["kw"] and c["syn"]),
               ("ssw", lambda c: c["sw"]), ("snsssw", lambda c: c["kw"] and not c["sw"] and not c["syn"])]
    sizes = []
    for name, f in classes:
        occ = [len(c["key"]) for c in cls_all if f(c)]
        dist = [len(k) for k in sorted({c["key"] for c in cls_all if f(c)})]
        m, s = mean_sd(occ)
        md, sd = mean_sd(dist)
        sizes += [(f"μ({name})", m), (f"σ({name})", s), (f"μ(≠{name})", md), (f"σ(≠{name})", sd)]
    sentences = [("|sents|", len(sent_rows))]
    for i, nm in enumerate(["chars", "tokens", "kw", "kwssnsw"]):
        m, s = mean_sd([float(r[i]) for r in sent_rows])
        sentences += [(f"μ({nm}/sent)", m), (f"σ({nm}/sent)", s)]
    messages = []
    for i, nm in enumerate(["|chars|", "|tokens|", "|sents|"]):
        m, s = mean_sd([float(r[i]) for r in msg_rows])
        messages += [(f"μ({nm}/msg)", m), (f"σ({nm}/msg)", s)]
    pos = []
    for g, tags in GROUPS:
        tot = 0.0
        for t in tags:
            v = pct(tagc.get(t, 0), ntag)
            pos.append((t, v))
            if v is not None:
                tot += v
        pos.append(("+" + g, None if ntag == 0 else tot))
    return {"chars": chars, "tokens": tokens, "sizes": sizes, "sentences": sentences,
            "messages": messages, "pos": pos}


HIST_CLASSES = [("kw", lambda c: c["kw"]), ("kw-nonsw", lambda c: c["kw"] and not c["sw"]),
                ("sw", lambda c: c["sw"]), ("kw-nonsw-nosynset", lambda c: c["kw"] and not c["sw"] and not c["syn"]),
                ("kw-nosynset", lambda c: c["kw"] and not c["syn"])]


def histograms(lex, texts, f):
    inc, ex, seen = [0] * 31, [0] * 31, set()
    for text in texts:
        for t in tokenize(text):
            c = classify(lex, t)
            if not f(c):
                continue
            L = min(len(c["key"]), 30)
            inc[L] += 1
            if c["key"] not in seen:
                seen.add(c["key"])
                ex[L] += 1
    ti, te = sum(inc), sum(ex)
    if ti == 0:
        return None
    maxl = max(L for L in range(31) if inc[L] or ex[L])
    rows = []
    pos = l1 = 0.0
    cross, prev = None, None
    for L in range(1, maxl + 1):
        a, b = inc[L] / ti, ex[L] / te
        d = a - b
        if d > 0:
            pos += d
        l1 += abs(d)
        sgn = inc[L] * te - ex[L] * ti
        if cross is None and prev is not None and prev > 0 and sgn <= 0:
            cross = L
        prev = sgn
        rows.append((L, a, b))
    return rows, pos, l1, cross

# ---------------------------------------------------------------- network

def network(msgs):
    by = {m["id"]: m for m in msgs}
    verts = sorted({m["author"] for m in msgs})
    w = {}
    for m in msgs:
        p = by.get(m["irt"]) if m["irt"] else None
        if p is None or p["author"] == m["author"]:
            continue
        e = (p["author"], m["author"])
        w[e] = w.get(e, 0) + 1
    return verts, w


def bc_bruteforce(verts, adj):
    """Sum over ordered pairs (s,t) of the fraction of shortest s-t paths through v,
    by explicit path enumeration (BFS distances + DFS over shortest paths)."""
    from fractions import Fraction
    bc = {v: Fraction(0) for v in verts}
    for s in verts:
        dist = {s: 0}
        q = [s]
        for u in q:
            for x in adj[u]:
                if x not in dist:
                    dist[x] = dist[u] + 1
                    q.append(x)
        for t in verts:
            if t == s or t not in dist:
                continue
            paths = []
            def dfs(u, path):
                if u == t:
                    paths.append(list(path)); return
                for x in adj[u]:
                    if dist.get(x) == dist[u] + 1 and dist[x] <= dist[t]:
                        path.append(x); dfs(x, path); path.pop()
            dfs(s, [s])
            for p in paths:
                for v in p[1:-1]:
                    bc[v] += Fraction(1, len(paths))
    return {v: float(bc[v]) for v in verts}


def vertex_metrics(verts, w):
    out = {v: dict(d_in=0, d_out=0, s_in=0, s_out=0) for v in verts}
    adj = {v: [] for v in verts}
    und = {v: set() for v in verts}
    for (a, b), x in sorted(w.items()):
        out[a]["d_out"] += 1; out[b]["d_in"] += 1
        out[a]["s_out"] += x; out[b]["s_in"] += x
        adj[a].append(b)
        und[a].add(b); und[b].add(a)
    bc = bc_bruteforce(verts, adj)
    for v in verts:
        o = out[v]
        o["d"] = o["d_in"] + o["d_out"]
        o["s"] = o["s_in"] + o["s_out"]
        o["bc"] = bc[v]
        nb = sorted(und[v])
        tri = sum(1 for i in range(len(nb)) for j in range(i + 1, len(nb)) if nb[j] in und[nb[i]])
        k = len(nb)
        o["tri"] = tri
        o["cc"] = 0.0 if k < 2 else tri / (k * (k - 1) / 2)
    return out


def partition(vm, fh, fi):
    order = sorted(vm, key=lambda v: (-vm[v]["s"], v))
    n = len(order)
    nh = math.ceil(fh * n - 1e-9)
    ni = min(math.ceil(fi * n - 1e-9), n - nh)
    lab = {}
    for r, v in enumerate(order):
        lab[v] = "hub" if r < nh else ("intermediary" if r < nh + ni else "periphery")
    return order, lab

# ---------------------------------------------------------------- stats

def ks(a, b):
    pts = sorted(set(a) | set(b))
    D = 0.0
    for x in pts:
        fa = sum(1 for v in a if v <= x) / len(a)
        fb = sum(1 for v in b if v <= x) / len(b)
        D = max(D, abs(fa - fb))
    n, m = len(a), len(b)
    return D / math.sqrt((n + m) / (n * m))


def pearson(x, y):
    pr = [(a, b) for a, b in zip(x, y) if a is not None and b is not None]
    n = len(pr)
    if n < 2:
        return None
    mx = sum(a for a, _ in pr) / n
    my = sum(b for _, b in pr) / n
    sxy = sum((a - mx) * (b - my) for a, b in pr)
    sxx = sum((a - mx) * (a - mx) for a, _ in pr)
    syy = sum((b - my) * (b - my) for _, b in pr)
    if sxx == 0 or syy == 0:
        return None
    return max(-1.0, min(1.0, sxy / math.sqrt(sxx * syy)))


def pca(rows, names, mode):
    rows = [r for r in rows if all(v is not None for v in r)]
    n = len(rows)
    if n < 2:
        return None
    X = np.array(rows, dtype=float)
    mu = X.mean(axis=0)
    sd = np.sqrt(((X - mu) ** 2).mean(axis=0))
    keep = [j for j in range(X.shape[1]) if sd[j] > 1e-12 * max(abs(mu[j]), 1.0)]
    if not keep:
        return None
    Xc = X[:, keep] - mu[keep]
    if mode == "correlation":
        Z = Xc / sd[keep]
        C = Z.T @ Z / n
    else:
        C = Xc.T @ Xc / (n - 1)
    ev, V = np.linalg.eigh(C)
    idx = np.argsort(-ev, kind="stable")
    ev, V = ev[idx], V[:, idx]
    pos = np.maximum(ev, 0)
    lam = 100 * pos / pos.sum()
    comps = []
    for k in range(len(keep)):
        v = V[:, k].copy()
        mx = np.abs(v).max()
        for x in v:
            if abs(x) >= mx - 1e-9:
                if x < 0:
                    v = -v
                break
        comps.append((float(lam[k]), None if lam[k] < 1e-9 else {names[keep[j]]: float(v[j]) for j in range(len(keep))}))
    return comps

# ---------------------------------------------------------------- features

TOPO = ["d", "d_in", "d_out", "s", "s_in", "s_out", "bc", "tri", "cc", "sector"]
SECTOR_IDX = {"periphery": 0, "intermediary": 1, "hub": 2}
TRACKED = [t for _, ts in GROUPS for t in ts]


def author_row(vm, lab, metrics):
    t = dict((k, v) for nm, tb in metrics.items() if nm != "_n" for k, v in tb)
    r = [("d", vm["d"]), ("d_in", vm["d_in"]), ("d_out", vm["d_out"]), ("s", vm["s"]),
         ("s_in", vm["s_in"]), ("s_out", vm["s_out"]), ("bc", vm["bc"]), ("tri", vm["tri"]),
         ("cc", vm["cc"]), ("sector", SECTOR_IDX[lab])]
    r += [("n_msgs", metrics["_n"]), ("n_chars", t["n chars"]), ("n_tokens", t["|tokens|"]),
          ("n_sents", t["|sents|"]),
          ("pct_space", t["100|space|/|char|"]), ("pct_punct", t["100|punct|/(|char|-|space|)"]),
          ("pct_digit", t["100|digit|/(|char|-|space|)"]), ("pct_letter", t["100|letter|/(|char|-|space|)"]),
          ("pct_vowel", t["100|vogal|/|letter|"]), ("pct_upper", t["100|Uppercase|/|letter|"])]
    tok = ["chars_per_token", "token_diversity", "pct_punct_tokens", "pct_kw", "lexical_diversity",
           "pct_kwss", "pct_kwsw", "pct_ukwsw", "pct_kwsw_ss", "pct_kwsw_nss", "pct_contractions",
           "pct_kw_nsw_nss", "pct_kw_nsw_ss"]
    r += list(zip(tok, [v for _, v in metrics["tokens"][1:]]))
    for cl, sz in zip(["skw", "skwss", "ssw", "snsssw"], range(4)):
        vals = metrics["sizes"][4 * sz: 4 * sz + 4]
        r += [(f"mu_{cl}", vals[0][1]), (f"sd_{cl}", vals[1][1]), (f"mu_{cl}_d", vals[2][1]), (f"sd_{cl}_d", vals[3][1])]
    for i, nm in enumerate(["chars_sent", "tokens_sent", "kw_sent", "kwssnsw_sent"]):
        r += [(f"mu_{nm}", metrics["sentences"][1 + 2 * i][1]), (f"sd_{nm}", metrics["sentences"][2 + 2 * i][1])]
    for i, nm in enumerate(["chars_msg", "tokens_msg", "sents_msg"]):
        r += [(f"mu_{nm}", metrics["messages"][2 * i][1]), (f"sd_{nm}", metrics["messages"][2 * i + 1][1])]
    p = dict(metrics["pos"])
    r += [(f"pos_{tg}", p[tg]) for tg in TRACKED]
    r += [(f"grp_{g}", p["+" + g]) for g, _ in GROUPS]
    return r


TEXT_CORR = ["n_chars", "n_tokens", "token_diversity", "pct_kw", "lexical_diversity", "pct_punct",
             "mu_chars_sent", "mu_tokens_msg", "grp_nouns", "grp_modifiers", "grp_verbs"]
TOPO_CORR = ["d", "d_in", "d_out", "s", "s_in", "s_out", "bc", "tri", "cc"]
MIXED_TOPO = ["d", "s", "bc", "cc"]
SCOPES = [("g.", "general", None), ("p.", "periphery", "periphery"),
          ("i.", "intermediary", "intermediary"), ("h.", "hub", "hub")]
INT_ROWS = {"n chars", "|tokens|", "|sents|"}

# ---------------------------------------------------------------- run


def run_list(name, msgs, lex, cfg, out):
    os.makedirs(out, exist_ok=True)
    verts, w = network(msgs)
    vm = vertex_metrics(verts, w)
    order, lab = partition(vm, cfg["f_hub"], cfg["f_intermediary"])
    by = {m["id"]: m for m in msgs}

    write(os.path.join(out, "network.tsv"), "src\tdst\tweight\n" + "".join(f"{a}\t{b}\t{x}\n" for (a, b), x in sorted(w.items())))
    nj = {"direction": "information",
          "vertices": [dict(id=v, d=vm[v]["d"], d_in=vm[v]["d_in"], d_out=vm[v]["d_out"], s=vm[v]["s"],
                            s_in=vm[v]["s_in"], s_out=vm[v]["s_out"], bc=jnum(vm[v]["bc"]), cc=jnum(vm[v]["cc"]),
                            tri=vm[v]["tri"]) for v in verts],
          "edges": [dict(src=a, dst=b, weight=x) for (a, b), x in sorted(w.items())]}
    write(os.path.join(out, "network.json"), json.dumps(nj, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    write(os.path.join(out, "partition.csv"), csv([["author", "sector", "s"]] + [[v, lab[v], str(vm[v]["s"])] for v in order]))

    # summary
    roots = [m for m in msgs if not m["irt"] or m["irt"] not in by]
    dangling = {m["irt"] for m in msgs if m["irt"] and m["irt"] not in by}
    N, M, G = len(verts), len(msgs), len(roots)
    ts = [m["ts"] for m in msgs]
    day = lambda t: datetime.fromtimestamp(t, timezone.utc).strftime("%Y-%m-%d")
    summ = [["measure", "g.", "p.", "i.", "h."],
            ["date_1", day(min(ts)), "-", "-", "-"], ["date_M", day(max(ts)), "-", "-", "-"]]
    secs = ["periphery", "intermediary", "hub"]
    nN = [sum(1 for v in verts if lab[v] == s) for s in secs]
    nM = [sum(1 for m in msgs if lab[m["author"]] == s) for s in secs]
    nG = [sum(1 for m in roots if lab[m["author"]] == s) for s in secs]
    summ += [["N", str(N)] + [str(x) for x in nN], ["N_%", "-"] + [fmt(pct(x, N)) for x in nN],
             ["M", str(M)] + [str(x) for x in nM], ["M_%", "-"] + [fmt(pct(x, M)) for x in nM],
             ["Γ", str(G)] + [str(x) for x in nG], ["Γ_%", "-"] + [fmt(pct(x, G)) for x in nG],
             ["dangling", str(len(dangling)), "-", "-", "-"],
             ["Δ_Y", fmt((max(ts) - min(ts)) / (365.25 * 86400)), "-", "-", "-"]]
    write(os.path.join(out, "summary.csv"), csv(summ))
    report = render("summary", summ)

    texts = lambda ms: [strip_quotes(m["body"]) if cfg["strip_quotes"] else m["body"] for m in ms]
    scope_metrics = {}
    for col, scope, sec in SCOPES:
        ms = [m for m in msgs if sec is None or lab[m["author"]] == sec]
        scope_metrics[scope] = corpus_metrics(lex, texts(ms))
    longrows = [["list", "scope", "metric", "value"]]
    mj = {}
    for table in ["chars", "tokens", "sizes", "sentences", "messages", "pos"]:
        rows = [["metric"] + [c for c, _, _ in SCOPES]]
        for i, (label, _) in enumerate(scope_metrics["general"][table]):
            cells = []
            for col, scope, sec in SCOPES:
                v = scope_metrics[scope][table][i][1]
                if label in ("n chars", "|tokens|") and sec is not None:
                    v = pct(v, scope_metrics["general"][table][i][1])
                cells.append(fmt(v))
            rows.append([label] + cells)
        for col, scope, sec in SCOPES:
            for label, v in scope_metrics[scope][table]:
                longrows.append([name, scope, f"{table}:{label}", fmt(v)])
                mj.setdefault(scope, {}).setdefault(table, {})[label] = jnum(v)
        write(os.path.join(out, f"{table}.csv"), csv(rows))
        report += render(table, rows)
    write(os.path.join(out, "metrics_long.csv"), csv(longrows))
    write(os.path.join(out, "metrics.json"), json.dumps(mj, indent=2, sort_keys=True, ensure_ascii=False) + "\n")

    # features
    feats = {}
    for v in verts:
        ms = [m for m in msgs if m["author"] == v]
        met = corpus_metrics(lex, texts(ms))
        met["_n"] = len(ms)
        feats[v] = author_row(vm[v], lab[v], met)
    fnames = [k for k, _ in feats[verts[0]]]
    rows = [["author"] + fnames] + [[v] + [fmt(x) for _, x in feats[v]] for v in verts]
    write(os.path.join(out, "features.csv"), csv(rows))
    fv = {v: dict(feats[v]) for v in verts}

    def members(sec):
        return [v for v in verts if sec is None or lab[v] == sec]

    for kind, pairs in [("topological", [(a, b) for i, a in enumerate(TOPO_CORR) for b in TOPO_CORR[i + 1:]]),
                        ("textual", [(a, b) for i, a in enumerate(TEXT_CORR) for b in TEXT_CORR[i + 1:]]),
                        ("mixed", [(a, b) for a in MIXED_TOPO for b in TEXT_CORR])]:
        rows = [["pair"] + [c for c, _, _ in SCOPES]]
        for a, b in pairs:
            cells = []
            for _, _, sec in SCOPES:
                mem = members(sec)
                cells.append(fmt(pearson([fv[v][a] for v in mem], [fv[v][b] for v in mem])))
            rows.append([f"{a}-{b}"] + cells)
        write(os.path.join(out, f"correlation_{kind}.csv"), csv(rows))

    pnames = [f for f in fnames if f != "sector"]
    res = {}
    for _, scope, sec in SCOPES:
        mem = members(sec)
        res[scope] = pca([[fv[v][f] for f in pnames] for v in mem], pnames, cfg["pca_mode"])
    for k in range(5):
        rows = [["feature"] + [c for c, _, _ in SCOPES]]
        lam = []
        for _, scope, _ in SCOPES:
            r = res[scope]
            lam.append(fmt(r[k][0]) if r is not None and k < len(r) and r[k][1] is not None else "NA")
        rows.append(["lambda"] + lam)
        for f in pnames:
            cells, anykept = [], False
            for _, scope, _ in SCOPES:
                r = res[scope]
                if r is None or k >= len(r) or r[k][1] is None or f not in r[k][1]:
                    cells.append("NA")
                elif abs(r[k][1][f]) > 0.05:
                    cells.append(fmt(r[k][1][f])); anykept = True
                else:
                    cells.append("")
            if anykept:
                rows.append([f] + cells)
        write(os.path.join(out, f"pca_{k + 1}.csv"), csv(rows))
        report += render(f"pca {k + 1}", rows)
    write(os.path.join(out, "report.txt"), report)

    hd = {}
    gt = texts(msgs)
    for cname, f in HIST_CLASSES:
        h = histograms(lex, gt, f)
        rows = [["length", "incident_mass", "existent_mass"]]
        if h is not None:
            rows += [[str(L), fmt(a), fmt(b)] for L, a, b in h[0]]
        write(os.path.join(out, f"hist_{cname}.csv"), csv(rows))
        hd[cname] = h
    obs = {}
    for v in verts:
        p = fv[v]
        adj = None if p["pos_JJ"] is None else p["pos_JJ"] + p["pos_JJR"] + p["pos_JJS"]
        obs[v] = {"substantives": p["grp_nouns"], "adjectives": adj,
                  "stopwords": p["pct_kwsw"], "punctuation": p["pct_punct"]}
    return dict(lab=lab, verts=verts, obs=obs, hd=hd, messages=len(msgs))


KS_OBS = ["substantives", "adjectives", "stopwords", "punctuation"]


def sample(r, sec, o):
    return [r["obs"][v][o] for v in r["verts"] if r["lab"][v] == sec and r["obs"][v][o] is not None]


def ks_cell(a, b):
    return "NA" if not a or not b else fmt(ks(a, b))


def main():
    cfgp, out = sys.argv[1], sys.argv[2]
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    cp.read(cfgp, encoding="utf-8")
    base = os.path.dirname(os.path.abspath(cfgp))
    r = cp["run"]
    cfg = dict(limit=int(r.get("limit", "20000")), f_hub=float(r.get("f_hub", "0.05")),
               f_intermediary=float(r.get("f_intermediary", "0.15")),
               strip_quotes=r.get("strip_quotes", "on") == "on", lexicon=r["lexicon"],
               pca_mode=r.get("pca_mode", "correlation"), seed=int(r.get("seed", "0")))
    lists = [(s.split(None, 1)[1], cp[s]["path"], cp[s]["format"]) for s in cp.sections() if s.startswith("list ")]
    lex, hashes = load_lexicon(os.path.join(base, cfg["lexicon"]))
    os.makedirs(out, exist_ok=True)
    results = {}
    for name, path, f in lists:
        full = os.path.join(base, path)
        msgs = (load_mbox if f == "mbox" else load_jsonl)(full)[: cfg["limit"]]
        results[name] = run_list(name, msgs, lex, cfg, os.path.join(out, name))
    names = [n for n, _, _ in lists]
    report = ""
    secs = [("P", "periphery"), ("I", "intermediary"), ("H", "hub")]
    for o in KS_OBS:
        rows = [["list", "H-P", "H-I", "I-P"]]
        for n in names:
            rr = results[n]
            rows.append([n, ks_cell(sample(rr, "hub", o), sample(rr, "periphery", o)),
                         ks_cell(sample(rr, "hub", o), sample(rr, "intermediary", o)),
                         ks_cell(sample(rr, "intermediary", o), sample(rr, "periphery", o))])
        write(os.path.join(out, f"ks_intra_{o}.csv"), csv(rows))
        report += render(f"ks intra {o}", flag(rows))
        pairs = [(a, b) for i, a in enumerate(names) for b in names[i + 1:]]
        rows = [["sector"] + [f"{a}-{b}" for a, b in pairs]]
        for lbl, sec in secs:
            rows.append([lbl] + [ks_cell(sample(results[a], sec, o), sample(results[b], sec, o)) for a, b in pairs])
        write(os.path.join(out, f"ks_inter_{o}.csv"), csv(rows))
        report += render(f"ks inter {o}", flag(rows))
    for kind, idx in [("l1", 2), ("positive", 1), ("crossing", 3)]:
        rows = [["class"] + names]
        for cname, _ in HIST_CLASSES:
            cells = []
            for n in names:
                h = results[n]["hd"][cname]
                cells.append("NA" if h is None else fmt(h[idx]))
            rows.append([cname] + cells)
        write(os.path.join(out, f"histdiff_{kind}.csv"), csv(rows))
        report += render(f"histdiff {kind}", rows)
    write(os.path.join(out, "report.txt"), report)
    man = {"config": {"f_hub": cfg["f_hub"], "f_intermediary": cfg["f_intermediary"], "limit": cfg["limit"],
                      "lexicon": cfg["lexicon"], "pca_mode": cfg["pca_mode"], "seed": cfg["seed"],
                      "strip_quotes": cfg["strip_quotes"]},
           "format_version": 1, "lexicon": hashes,
           "lists": [{"format": f, "messages": results[n]["messages"], "name": n, "path": p, "status": "ok"}
                     for n, p, f in lists]}
    write(os.path.join(out, "manifest.json"), json.dumps(man, indent=2, sort_keys=True, ensure_ascii=False) + "\n")


def flag(rows):
    out = [rows[0]]
    for r in rows[1:]:
        out.append([r[0]] + [c + "*" if c != "NA" and float(c) > 1.7 else c for c in r[1:]])
    return out


if __name__ == "__main__":
    main()
