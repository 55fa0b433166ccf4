# License: BSD 3 clause

import os

import numpy as np
import h5py

from .logs import setLogger


class H5File(object):
    """
    Storage of grid functions in a hdf5 file, with a xdmf description
    for the grids of dimension 2 and 3.

    Parameters
    ----------

    filename : str
      the name of the file without extension
    path : str
      the output directory, created if needed (default '.')

    Examples
    --------

    >>> h5 = H5File('solution', 'output')
    >>> h5.set_grid(grid)
    >>> h5.add_scalar('u', report.u)
    >>> h5.save()

    """
    def __init__(self, filename, path='.'):
        self.log = setLogger(__name__)
        self.path = path
        self.filename = filename
        self.h5filename = filename + '.h5'
        if not os.path.exists(path):
            os.makedirs(path)
        self.h5file = h5py.File(os.path.join(path, self.h5filename), "w")
        self.scalars = {}
        self.global_size = None
        self.dim = 0

    def set_grid(self, grid):
        """
        store the cell centers of the grid as the datasets x_0, ..., x_{m-1}.
        """
        if self.global_size is not None:
            self.log.warning("h5 grid redefined.")
        self.dim = grid.m
        self.global_size = list(grid.shape)
        for i, x in enumerate(grid.coords):
            self.h5file.create_dataset("x_{0:d}".format(i), data=np.asarray(x, dtype=np.double), track_times=False)
        self.h5file.attrs['n'] = np.asarray(grid.spec.n)

    def add_scalar(self, name, f, *fargs):
        """
        store a scalar field given as a GridFunction, an array or a function
        returning one of them.
        """
        if self.global_size is None:
            self.log.error("The grid must be set before the field {0}".format(name))
            raise ValueError("set_grid must be called before add_scalar")
        data = f if not callable(f) else f(*fargs)
        data = getattr(data, 'values', data)
        data = np.asarray(data, dtype=np.double)
        if list(data.shape) != self.global_size:
            self.log.error("The field {0} has the shape {1}, the grid {2}".format(name, data.shape, self.global_size))
            raise ValueError("shape mismatch for the field {0}".format(name))
        # the slowest index comes first in xdmf
        self.h5file.create_dataset(name, data=data.T, track_times=False)
        self.scalars[name] = self.h5filename + ":/" + name

    def add_series(self, name, values):
        """
        store a one dimensional series (an iteration history for instance).
        """
        self.h5file.create_dataset(name, data=np.asarray(values, dtype=np.double), track_times=False)

    def save(self):
        self.h5file.close()
        if self.dim not in [2, 3]:
            return
        with open(os.path.join(self.path, self.filename + '.xdmf'), "w") as xdmf_file:
            xdmf_file.write("""<?xml version="1.0" ?>
<!DOCTYPE Xdmf SYSTEM "Xdmf.dtd" []>
<Xdmf>
 <Domain>
""")
            dims = ' '.join(map(str, self.global_size[::-1]))
            if self.dim == 2:
                xdmf_file.write("""
  <Grid Name="Structured Grid" GridType="Uniform">
   <Topology TopologyType="2DRectMesh" NumberOfElements="{0}"/>
   <Geometry GeometryType="VXVY">
""".format(dims))
            else:
                xdmf_file.write("""
  <Grid Name="Structured Grid" GridType="Uniform">
   <Topology TopologyType="3DRectMesh" NumberOfElements="{0}"/>
   <Geometry GeometryType="VXVYVZ">
""".format(dims))
            for i in range(self.dim):
                xdmf_file.write("""
    <DataItem Format="HDF" Dimensions="{0}">
     {1}:/x_{2}
    </DataItem>
""".format(self.global_size[i], self.h5filename, i))
            xdmf_file.write("   </Geometry>\n")
            for k, v in sorted(self.scalars.items()):
                xdmf_file.write("""
   <Attribute Name="{0}" AttributeType="Scalar" Center="Node">
    <DataItem Format="HDF" Dimensions="{1}">
     {2}
    </DataItem>
   </Attribute>
""".format(k, dims, v))
            xdmf_file.write("  </Grid>\n </Domain>\n</Xdmf>\n")


def save_solution(path, report, a=None, filename='solution'):
    """
    write the solution of a SolveReport, the weight and the histories in
    path/filename.h5 (and path/filename.xdmf for m = 2, 3).
    """
    h5 = H5File(filename, path)
    h5.set_grid(report.u.grid)
    h5.add_scalar('u', report.u)
    if a is not None:
        h5.add_scalar('a', a)
    for name in ['residual', 'energy', 'cone_violation']:
        h5.add_series(name + '_history', getattr(report, name + '_history'))
    h5.save()
    return os.path.join(path, filename + '.h5')
