//! Seeded random generators. Equal configurations give equal values.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Logic, Value};
use crate::formula::{AdqbfInstance, Block, BlockKind, FuncSymbol, ModalFormula, PropFormula, PropVar, So2Formula, TeamFormula};

/// Relative weights of the atoms in team and modal formulas. Literals
/// always have weight 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomMix {
    pub dep: u32,
    pub inc: u32,
    pub gda: u32,
}

impl Default for AtomMix {
    fn default() -> Self {
        AtomMix { dep: 1, inc: 1, gda: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    /// Target node count.
    pub size: usize,
    /// Size of the variable pool (`p1…`, `x1…`, `u1…`).
    pub vars: usize,
    pub logic: Logic,
    pub mix: AtomMix,
    /// Largest arity of a generated SO₂ function symbol.
    pub max_arity: usize,
    /// Most proper function symbols in an SO₂ sentence.
    pub max_functions: usize,
    /// Whether team formulas may use `∼`.
    pub tilde: bool,
    /// Generalized atoms available to team formulas, by name and arity.
    pub gdas: Vec<(String, usize)>,
}

impl GenConfig {
    pub fn new(logic: Logic, seed: u64, size: usize) -> Self {
        GenConfig {
            seed,
            size,
            vars: 3,
            logic,
            mix: AtomMix::default(),
            max_arity: 2,
            max_functions: 2,
            tilde: true,
            gdas: Vec::new(),
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn pool(&self, prefix: &str) -> Vec<PropVar> {
        (1..=self.vars.max(1)).map(|i| PropVar::new(format!("{prefix}{i}"))).collect()
    }
}

/// A value of `cfg.logic`: a closed SO₂ sentence, an ADQBF instance, or a
/// formula over the pool `p1…`.
pub fn generate(cfg: &GenConfig) -> Value {
    match cfg.logic {
        Logic::So2 => Value::So2(so2_sentence(cfg)),
        Logic::Adqbf => Value::Adqbf(adqbf(cfg)),
        Logic::Prop => {
            let mut rng = cfg.rng();
            Value::Prop(prop(&mut rng, cfg.size, &cfg.pool("p")))
        }
        Logic::Team => Value::Team(team(cfg)),
        Logic::Modal => Value::Modal(modal(cfg)),
    }
}

/// Splits `n ≥ 2` nodes into two nonempty parts.
fn split(rng: &mut impl Rng, n: usize) -> (usize, usize) {
    let a = rng.gen_range(1..n.max(2));
    (a, (n - a).max(1))
}

fn pick<'a, T>(rng: &mut impl Rng, xs: &'a [T]) -> &'a T {
    xs.choose(rng).expect("nonempty pool")
}

fn subset(rng: &mut impl Rng, xs: &[PropVar], max: usize) -> Vec<PropVar> {
    let k = rng.gen_range(0..=max.min(xs.len()));
    let mut out: Vec<PropVar> = xs.choose_multiple(rng, k).cloned().collect();
    out.sort();
    out
}

// ---- propositional ----

pub fn prop(rng: &mut impl Rng, size: usize, vars: &[PropVar]) -> PropFormula {
    if size <= 1 {
        return PropFormula::Lit(pick(rng, vars).clone(), rng.gen());
    }
    match rng.gen_range(0..5) {
        0 => PropFormula::not(prop(rng, size - 1, vars)),
        1 | 2 => {
            let (a, b) = split(rng, size - 1);
            PropFormula::and(prop(rng, a, vars), prop(rng, b, vars))
        }
        _ => {
            let (a, b) = split(rng, size - 1);
            PropFormula::or(prop(rng, a, vars), prop(rng, b, vars))
        }
    }
}

// ---- SO₂ ----

struct So2Gen<'a, R: Rng> {
    rng: &'a mut R,
    cfg: &'a GenConfig,
    scope: Vec<FuncSymbol>,
    functions: usize,
    counter: usize,
}

impl<R: Rng> So2Gen<'_, R> {
    fn props(&self) -> Vec<FuncSymbol> {
        self.scope.iter().filter(|s| !s.is_proper()).cloned().collect()
    }

    fn argument(&mut self) -> So2Formula {
        let props = self.props();
        let x = So2Formula::apply(pick(self.rng, &props).clone(), Vec::new());
        match self.rng.gen_range(0..6) {
            0 => So2Formula::not(x),
            1 => {
                let y = So2Formula::apply(pick(self.rng, &props).clone(), Vec::new());
                So2Formula::and(x, So2Formula::not(y))
            }
            _ => x,
        }
    }

    fn leaf(&mut self) -> So2Formula {
        let s = pick(self.rng, &self.scope).clone();
        let args = (0..s.arity()).map(|_| self.argument()).collect();
        So2Formula::apply(s, args)
    }

    fn binder(&mut self, size: usize) -> So2Formula {
        let proper = self.functions < self.cfg.max_functions && self.cfg.max_arity > 0 && self.rng.gen_bool(0.4);
        self.counter += 1;
        let s = if proper {
            self.functions += 1;
            FuncSymbol::new(format!("f{}", self.counter), self.rng.gen_range(1..=self.cfg.max_arity))
        } else {
            FuncSymbol::new(format!("x{}", self.counter), 0)
        };
        self.scope.push(s.clone());
        let body = self.formula(size);
        self.scope.pop();
        if self.rng.gen() {
            So2Formula::exists(s, body)
        } else {
            So2Formula::forall(s, body)
        }
    }

    fn formula(&mut self, size: usize) -> So2Formula {
        if size <= 1 {
            return self.leaf();
        }
        match self.rng.gen_range(0..6) {
            0 => So2Formula::not(self.formula(size - 1)),
            1 | 2 => self.binder(size - 1),
            _ => {
                let (a, b) = split(self.rng, size - 1);
                So2Formula::and(self.formula(a), self.formula(b))
            }
        }
    }
}

/// A closed sentence whose outermost quantifier binds a proposition.
pub fn so2_sentence(cfg: &GenConfig) -> So2Formula {
    let mut rng = cfg.rng();
    let mut g = So2Gen { rng: &mut rng, cfg, scope: vec![FuncSymbol::new("x0", 0)], functions: 0, counter: 0 };
    let body = g.formula(cfg.size.saturating_sub(1).max(1));
    let x0 = FuncSymbol::new("x0", 0);
    if rng.gen() {
        So2Formula::exists(x0, body)
    } else {
        So2Formula::forall(x0, body)
    }
}

/// A swap shape `∀x∃f ψ` or `∃x∀f ψ` with `ar(f) ≤ max_arity`; `ψ` may
/// mention the free propositions `a`, `b`. Returns the formula, `x` and `f`.
pub fn swap_shape(cfg: &GenConfig) -> (So2Formula, FuncSymbol, FuncSymbol) {
    let mut rng = cfg.rng();
    let x = FuncSymbol::new("x", 0);
    let f = FuncSymbol::new("f", rng.gen_range(1..=cfg.max_arity.max(1)));
    let scope = vec![x.clone(), f.clone(), FuncSymbol::new("a", 0), FuncSymbol::new("b", 0)];
    let mut sub = cfg.clone();
    sub.max_functions = 0;
    let mut g = So2Gen { rng: &mut rng, cfg: &sub, scope, functions: 0, counter: 0 };
    let mut body = g.formula(cfg.size.max(1));
    // Make sure `f` occurs.
    if !body.free_symbols().contains(&f) {
        g.scope = vec![f.clone()];
        let extra = {
            let args = (0..f.arity()).map(|_| So2Formula::apply(x.clone(), Vec::new())).collect();
            So2Formula::apply(f.clone(), args)
        };
        body = So2Formula::and(body, if g.rng.gen() { extra } else { So2Formula::not(extra) });
    }
    let phi = if rng.gen() {
        So2Formula::forall(x.clone(), So2Formula::exists(f.clone(), body))
    } else {
        So2Formula::exists(x.clone(), So2Formula::forall(f.clone(), body))
    };
    (phi, x, f)
}

// ---- ADQBF ----

/// `1…2` universals `u1…`, `1…vars` block variables `y1…` with random
/// kinds and dependency sets, and a matrix of `size` nodes.
pub fn adqbf(cfg: &GenConfig) -> AdqbfInstance {
    let mut rng = cfg.rng();
    let nu = rng.gen_range(1..=2);
    let universals: Vec<PropVar> = (1..=nu).map(|i| PropVar::new(format!("u{i}"))).collect();
    let nb = rng.gen_range(1..=cfg.vars.max(1));
    let mut blocks: Vec<Block> = Vec::new();
    for i in 1..=nb {
        let kind = if rng.gen() { BlockKind::Exists } else { BlockKind::Union };
        let var = PropVar::new(format!("y{i}"));
        let deps = subset(&mut rng, &universals, universals.len());
        match blocks.last_mut() {
            Some(b) if b.kind == kind => b.vars.push(crate::formula::QuantVar { var, deps }),
            _ => blocks.push(Block::new(kind, [(var, deps)])),
        }
    }
    let all: Vec<PropVar> = universals.iter().cloned().chain(blocks.iter().flat_map(|b| b.vars.iter().map(|q| q.var.clone()))).collect();
    let matrix = prop(&mut rng, cfg.size.max(1), &all);
    AdqbfInstance::new(universals, blocks, matrix).expect("generated instances are well formed")
}

// ---- team logic ----

struct TeamGen<'a, R: Rng> {
    rng: &'a mut R,
    cfg: &'a GenConfig,
    pool: Vec<PropVar>,
}

impl<R: Rng> TeamGen<'_, R> {
    fn vars(&mut self, k: usize) -> Vec<PropVar> {
        (0..k).map(|_| pick(self.rng, &self.pool).clone()).collect()
    }

    fn atom(&mut self) -> TeamFormula {
        let gda = if self.cfg.gdas.is_empty() { 0 } else { self.cfg.mix.gda };
        let weights = [2, self.cfg.mix.dep, self.cfg.mix.inc, gda];
        let total: u32 = weights.iter().sum();
        let mut roll = self.rng.gen_range(0..total);
        let mut which = 0;
        while roll >= weights[which] {
            roll -= weights[which];
            which += 1;
        }
        match which {
            0 => TeamFormula::Lit(pick(self.rng, &self.pool).clone(), self.rng.gen()),
            1 => {
                let pool = self.pool.clone();
                let ante = subset(self.rng, &pool, 2);
                let q = pick(self.rng, &pool).clone();
                TeamFormula::dep(ante, q)
            }
            2 => {
                let k = self.rng.gen_range(1..=2);
                let (l, r) = (self.vars(k), self.vars(k));
                TeamFormula::inc(l, r)
            }
            _ => {
                let (name, arity) = pick(self.rng, &self.cfg.gdas).clone();
                let args = self.vars(arity);
                TeamFormula::gda(name, args)
            }
        }
    }

    fn formula(&mut self, size: usize) -> TeamFormula {
        if size <= 1 {
            return self.atom();
        }
        let top = if self.cfg.tilde { 7 } else { 6 };
        match self.rng.gen_range(0..top) {
            0 | 1 => {
                let (a, b) = split(self.rng, size - 1);
                TeamFormula::and(self.formula(a), self.formula(b))
            }
            2 | 3 => {
                let (a, b) = split(self.rng, size - 1);
                TeamFormula::or(self.formula(a), self.formula(b))
            }
            4 => {
                let v = pick(self.rng, &self.pool).clone();
                TeamFormula::exists(v, self.formula(size - 1))
            }
            5 => {
                let v = pick(self.rng, &self.pool).clone();
                TeamFormula::forall(v, self.formula(size - 1))
            }
            _ => TeamFormula::tilde(self.formula(size - 1)),
        }
    }
}

/// A team formula over `p1…p{vars}` with atoms drawn by `cfg.mix`.
pub fn team(cfg: &GenConfig) -> TeamFormula {
    let mut rng = cfg.rng();
    let pool = cfg.pool("p");
    TeamGen { rng: &mut rng, cfg, pool }.formula(cfg.size.max(1))
}

/// A prenex sentence `Q₁p1…Qₙpn θ` where `θ` is a ∼-free quantifier-free
/// formula with at most `max_inc` inclusion atoms.
pub fn prenex_qplinc(cfg: &GenConfig, n: usize, max_inc: usize) -> TeamFormula {
    let mut rng = cfg.rng();
    let pool: Vec<PropVar> = (1..=n.max(1)).map(|i| PropVar::new(format!("p{i}"))).collect();
    let mut sub = cfg.clone();
    sub.tilde = false;
    sub.mix = AtomMix { dep: 0, inc: cfg.mix.inc.max(1), gda: 0 };
    let mut matrix = loop {
        let mut g = TeamGen { rng: &mut rng, cfg: &sub, pool: pool.clone() };
        let m = g.quantifier_free(cfg.size.max(1));
        let incs = count(&m, &|f| matches!(f, TeamFormula::Inc(..)));
        if incs <= max_inc {
            break m;
        }
    };
    for v in pool.iter().take(n).rev() {
        matrix = if rng.gen() { TeamFormula::exists(v.clone(), matrix) } else { TeamFormula::forall(v.clone(), matrix) };
    }
    matrix
}

impl<R: Rng> TeamGen<'_, R> {
    fn quantifier_free(&mut self, size: usize) -> TeamFormula {
        if size <= 1 {
            return self.atom();
        }
        let (a, b) = split(self.rng, size - 1);
        if self.rng.gen() {
            TeamFormula::and(self.quantifier_free(a), self.quantifier_free(b))
        } else {
            TeamFormula::or(self.quantifier_free(a), self.quantifier_free(b))
        }
    }
}

/// A quantifier-free, ∼-free team formula over `p1…p{vars}`.
pub fn qf_team(cfg: &GenConfig) -> TeamFormula {
    let mut rng = cfg.rng();
    let pool = cfg.pool("p");
    TeamGen { rng: &mut rng, cfg, pool }.quantifier_free(cfg.size.max(1))
}

pub(crate) fn count(f: &TeamFormula, pred: &impl Fn(&TeamFormula) -> bool) -> usize {
    let mut k = 0;
    f.visit(&mut |n| k += pred(n) as usize);
    k
}

// ---- modal inclusion logic ----

/// A modal formula over `p1…p{vars}`; inclusion atoms appear when
/// `cfg.mix.inc > 0`.
pub fn modal(cfg: &GenConfig) -> ModalFormula {
    fn go(rng: &mut impl Rng, size: usize, pool: &[PropVar], inc: u32) -> ModalFormula {
        if size <= 1 {
            if inc > 0 && rng.gen_range(0..2 + inc) >= 2 {
                let k = rng.gen_range(1..=2);
                let l = (0..k).map(|_| pick(rng, pool).clone()).collect();
                let r = (0..k).map(|_| pick(rng, pool).clone()).collect();
                return ModalFormula::inc(l, r);
            }
            return ModalFormula::Lit(pick(rng, pool).clone(), rng.gen());
        }
        match rng.gen_range(0..6) {
            0 => ModalFormula::diamond(go(rng, size - 1, pool, inc)),
            1 => ModalFormula::boxed(go(rng, size - 1, pool, inc)),
            2 | 3 => {
                let (a, b) = split(rng, size - 1);
                ModalFormula::and(go(rng, a, pool, inc), go(rng, b, pool, inc))
            }
            _ => {
                let (a, b) = split(rng, size - 1);
                ModalFormula::or(go(rng, a, pool, inc), go(rng, b, pool, inc))
            }
        }
    }
    let mut rng = cfg.rng();
    go(&mut rng, cfg.size.max(1), &cfg.pool("p"), cfg.mix.inc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let cfg = GenConfig::new(Logic::So2, 0, 5);
        assert_eq!(generate(&cfg), generate(&cfg));
        for logic in Logic::ALL {
            let cfg = GenConfig::new(logic, 7, 9);
            assert_eq!(generate(&cfg), generate(&cfg));
        }
    }

    #[test]
    fn sentences_are_closed() {
        for seed in 0..200 {
            let phi = so2_sentence(&GenConfig::new(Logic::So2, seed, 9));
            assert!(phi.is_closed(), "{phi:?}");
            let procs = phi.all_symbols().into_iter().filter(|s| s.is_proper()).count();
            assert!(procs <= 2);
        }
    }

    #[test]
    fn atom_mix_is_respected() {
        let mut cfg = GenConfig::new(Logic::Team, 0, 12);
        cfg.mix = AtomMix { dep: 1, inc: 0, gda: 0 };
        for seed in 0..200 {
            cfg.seed = seed;
            assert_eq!(count(&team(&cfg), &|f| matches!(f, TeamFormula::Inc(..))), 0);
        }
    }

    #[test]
    fn swap_shapes_mention_f() {
        for seed in 0..100 {
            let (phi, _, f) = swap_shape(&GenConfig::new(Logic::So2, seed, 6));
            assert!(phi.all_symbols().contains(&f));
        }
    }
}
