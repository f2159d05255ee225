import streamlit as st
import pandas as pd

from services.suite_service import SUITES, SuiteParams, run_suite

# Set page config
st.set_page_config(
    page_title="Pin(2) Mahowald Line Verifier",
    page_icon="🧮",
    layout="wide"
)

# Title and description
st.title("Pin(2) Mahowald Line Verifier")
st.markdown("""
Exact-arithmetic checks of the computations behind the Pin(2)-equivariant Mahowald invariants
and the 10/8 + 4 bound. Every number on these pages is a rational computed exactly; nothing is sampled.

- **Valuations**: coefficients of (ln(1+z)/z)^(4k+1), their 2-adic valuations and the Chern character solvers
- **Thom Spectra**: Steenrod squares on X(m), attaching maps and cell diagrams
- **Mahowald Line**: the staircase 𝔏(m), Furuta-Mahowald existence and spin geography

The same suites run from the command line with `python verify.py all`.
""")

# Main content - Feature showcase
st.header("Dashboard Features")

col1, col2, col3 = st.columns(3)

with col1:
    st.subheader("📐 Valuations")
    st.write("""
    - Browse b_m and ν(b_m) for any k
    - Check the seven valuation lemmas
    - Inspect the simple Chern and γ/α solutions
    """)
    if st.button("Go to Valuations", use_container_width=True):
        st.switch_page("pages/0_Valuations.py")

with col2:
    st.subheader("🧵 Thom Spectra")
    st.write("""
    - Sq¹ and Sq² residue tables
    - Cell diagrams of X(m) on any window
    - Middle structure of Z(k)
    """)
    if st.button("Go to Thom Spectra", use_container_width=True):
        st.switch_page("pages/1_Thom_Spectra.py")

with col3:
    st.subheader("📈 Mahowald Line")
    st.write("""
    - The staircase 𝔏(m) against its lower bound
    - The (p, q) existence grid
    - Geography and b₂/signature checks
    """)
    if st.button("Go to Mahowald Line", use_container_width=True):
        st.switch_page("pages/2_Mahowald_Line.py")


@st.cache_data
def quick_summary(kmax, mmax, pmax, qmax):
    params = SuiteParams(kmax=kmax, mmax=mmax, pmax=pmax, qmax=qmax)
    rows = []
    for name in SUITES:
        report = run_suite(name, params)
        rows.append({
            "suite": name,
            "passed": report.pass_count,
            "failed": report.fail_count,
            "first_failure": (report.first_failure() or {}).get("key", ""),
        })
    return rows


st.header("Quick Verification")
st.write("Small ranges of every suite, run in-process. Use the CLI for the full sweeps.")

try:
    summary = quick_summary(4, 15, 16, 64)
    cols = st.columns(len(summary))
    for col, row in zip(cols, summary):
        with col:
            st.metric(row["suite"], f"{row['passed']} ✓", delta=f"-{row['failed']}" if row["failed"] else None)
    failures = [row for row in summary if row["failed"]]
    if failures:
        st.error(f"Failing suites: {', '.join(row['suite'] for row in failures)}")
        st.dataframe(pd.DataFrame(failures), use_container_width=True)
    else:
        st.success("All quick checks pass.")
except Exception as e:
    st.error(f"Failed to run quick verification: {str(e)}")

# Example parameters
st.subheader("Example parameters to try:")
st.write("k = 2, 3, 4 on Valuations · X(11) on [-3, 8] on Thom Spectra · p = 4, 8 on Mahowald Line")

# Footer
st.markdown("---")
st.caption("Pin(2) Mahowald Line Verifier | Exact rational arithmetic, stem data from the standard 2-local tables")
