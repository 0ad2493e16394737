package org.toy;

import java.util.ArrayList;
import java.util.List;

public class Canvas {
    private final List<Shape> shapes = new ArrayList<>();

    public Canvas() {
    }

    public void draw(Shape s) {
        shapes.add(s);
        System.out.println("area " + s.area());
    }

    /**
     * Removes every shape.
     */
    public void clear()
    {
        shapes.clear();   // reformatted and commented only
    }
}
