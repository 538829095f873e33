use serde::{Deserialize, Serialize};

use super::character::Character;
use super::matrix::Mat;
use crate::cyclotomic::rational_parts;
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Subgroup};
use crate::zlinalg::lcm;

/// Matrix representation given by the images of a generating set.
#[derive(Clone, Debug)]
pub struct Representation {
    pub group: String,
    pub dim: usize,
    pub conductor: u64,
    /// Generating elements (indices in the parent group).
    pub gens: Vec<usize>,
    pub images: Vec<Mat>,
    /// Restriction to the center, when known.
    pub central_character: Option<Character>,
}

/// Images of every element of the generated subgroup.
#[derive(Clone, Debug)]
pub struct ImageTable {
    images: Vec<Option<Mat>>,
    elements: Vec<usize>,
}

impl ImageTable {
    pub fn get(&self, x: usize) -> Option<&Mat> {
        self.images.get(x).and_then(|m| m.as_ref())
    }

    /// Elements in breadth-first order from the identity.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }
}

impl Representation {
    pub fn new(group: impl Into<String>, gens: Vec<usize>, images: Vec<Mat>) -> Result<Self> {
        if gens.len() != images.len() {
            return Err(Error::DimensionMismatch(format!("{} generators, {} images", gens.len(), images.len())));
        }
        let dim = images.first().map_or(1, Mat::dim);
        let conductor = images.iter().fold(1, |acc, m| lcm(acc, m.conductor()));
        let images = images.iter().map(|m| m.lift(conductor)).collect::<Result<Vec<_>>>()?;
        if images.iter().any(|m| m.dim() != dim) {
            return Err(Error::DimensionMismatch("generator images of different sizes".into()));
        }
        Ok(Representation { group: group.into(), dim, conductor, gens, images, central_character: None })
    }

    /// One-dimensional representation from a character.
    pub fn from_character(g: &FiniteGroup, chi: &Character) -> Result<Self> {
        let gens = chi.domain().generators().to_vec();
        let images = gens
            .iter()
            .map(|&s| Mat::identity(chi.conductor, 1).scale_root(chi.value(s).expect("generator in domain")))
            .collect();
        Representation::new(g.label(), gens, images)
    }

    pub fn trivial(g: &FiniteGroup, d: usize) -> Self {
        let gens = g.generators().to_vec();
        let images = gens.iter().map(|_| Mat::identity(1, d)).collect();
        Representation { group: g.label().into(), dim: d, conductor: 1, gens, images, central_character: None }
    }

    pub fn lift(&self, n: u64) -> Result<Self> {
        Ok(Representation {
            conductor: n,
            images: self.images.iter().map(|m| m.lift(n)).collect::<Result<_>>()?,
            ..self.clone()
        })
    }

    /// Smallest conductor carrying a monomial representation; dense ones are left alone.
    pub fn minimize_conductor(self) -> Self {
        let mut g = self.conductor;
        for m in &self.images {
            match m {
                Mat::Mono(a) => g = a.exps.iter().fold(g, |acc, &e| num_integer::gcd(acc, e)),
                Mat::Dense(_) => return self,
            }
        }
        if g <= 1 {
            return self;
        }
        let n = self.conductor / g;
        let images = self
            .images
            .into_iter()
            .map(|m| match m {
                Mat::Mono(a) => Mat::Mono(super::matrix::MonomialMatrix {
                    conductor: n,
                    exps: a.exps.iter().map(|e| e / g).collect(),
                    perm: a.perm,
                }),
                d => d,
            })
            .collect();
        Representation { conductor: n, images, ..self }
    }

    pub fn is_monomial(&self) -> bool {
        self.images.iter().all(Mat::is_monomial)
    }

    /// Subgroup generated by `gens`.
    pub fn domain(&self, g: &FiniteGroup) -> Subgroup {
        Subgroup::generated(g, &self.gens)
    }

    /// Images of all elements reachable from the generators. Every Cayley-graph
    /// edge `x -> x s` is checked, so success means the generator images define a
    /// homomorphism on the generated subgroup.
    pub fn image_table(&self, g: &FiniteGroup) -> Result<ImageTable> {
        let mut images: Vec<Option<Mat>> = vec![None; g.order()];
        images[0] = Some(Mat::identity(self.conductor, self.dim));
        let mut elements = vec![0usize];
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            let mx = images[x].clone().expect("visited");
            for (&s, ms) in self.gens.iter().zip(&self.images) {
                let y = g.mul(x, s);
                let my = mx.mul(ms)?;
                match &images[y] {
                    Some(prev) => {
                        if *prev != my {
                            return Err(Error::NotHomomorphism(format!(
                                "relation fails at element {:?} in {}",
                                g.coords(y),
                                self.group
                            )));
                        }
                    }
                    None => {
                        images[y] = Some(my);
                        elements.push(y);
                    }
                }
            }
            i += 1;
        }
        Ok(ImageTable { images, elements })
    }

    /// Image of a single element via a word in the generators; `None` when the
    /// element is outside the generated subgroup.
    pub fn image(&self, g: &FiniteGroup, x: usize) -> Result<Option<Mat>> {
        Ok(self.image_table(g)?.get(x).cloned())
    }

    /// Exact check of `rho(x) rho(y) = rho(xy)` on the listed pairs.
    pub fn check_pairs(&self, g: &FiniteGroup, table: &ImageTable, pairs: &[(usize, usize)]) -> Result<bool> {
        for &(x, y) in pairs {
            let (Some(a), Some(b), Some(c)) = (table.get(x), table.get(y), table.get(g.mul(x, y))) else {
                return Ok(false);
            };
            if a.mul(b)? != *c {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Character value at every element of the table, as exact numbers.
    pub fn character(&self, table: &ImageTable) -> Vec<(usize, crate::cyclotomic::CyclotomicNumber)> {
        table.elements().iter().map(|&x| (x, table.get(x).expect("in table").trace())).collect()
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.gens != other.gens {
            return Err(Error::DimensionMismatch("direct sum over different generating sets".into()));
        }
        let m = lcm(self.conductor, other.conductor);
        let (a, b) = (self.lift(m)?, other.lift(m)?);
        let images = a.images.iter().zip(&b.images).map(|(x, y)| x.direct_sum(y)).collect::<Result<_>>()?;
        Representation::new(self.group.clone(), self.gens.clone(), images)
    }

    /// Same representation on another generating set of the same subgroup.
    pub fn regenerate(&self, g: &FiniteGroup, gens: &[usize]) -> Result<Representation> {
        let table = self.image_table(g)?;
        let images = gens
            .iter()
            .map(|&s| table.get(s).cloned().ok_or_else(|| Error::InvalidParameter("generator outside the domain".into())))
            .collect::<Result<_>>()?;
        Ok(Representation { gens: gens.to_vec(), images, ..self.clone() })
    }

    /// JSON-ready form with every entry spelled out as rational coefficients.
    pub fn export(&self, g: &FiniteGroup) -> RepresentationExport {
        RepresentationExport {
            group: self.group.clone(),
            dim: self.dim,
            conductor: self.conductor,
            generators: self.gens.iter().map(|&s| g.coords(s)).collect(),
            generator_images: self.images.iter().map(export_matrix).collect(),
            central_character: self.central_character.as_ref().map(|c| {
                c.domain().generators().iter().map(|&z| (g.coords(z), c.value(z).unwrap_or(0), c.conductor)).collect()
            }),
        }
    }
}

/// Matrix entries as lists of `[numerator, denominator]` coefficients of powers of zeta.
pub type ExportedMatrix = Vec<Vec<Vec<[String; 2]>>>;

pub fn export_matrix(m: &Mat) -> ExportedMatrix {
    let d = m.to_dense();
    (0..d.rows)
        .map(|i| (0..d.cols).map(|j| d.get(i, j).coefficients().iter().map(rational_parts).collect()).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationExport {
    pub group: String,
    pub dim: usize,
    pub conductor: u64,
    pub generators: Vec<Vec<u64>>,
    pub generator_images: Vec<ExportedMatrix>,
    /// `(central generator, exponent, conductor)` triples.
    pub central_character: Option<Vec<(Vec<u64>, u64, u64)>>,
}
